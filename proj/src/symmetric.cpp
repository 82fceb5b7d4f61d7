#include "tensorank/symmetric.hpp"

#include "tensorank/rng.hpp"

#include <algorithm>
#include <cmath>

namespace tensorank {

int64_t binomial(int64_t n, int64_t k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    int64_t r = 1;
    for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int64_t multinomial(const ExponentIndex& j) {
    int64_t d = 0, r = 1;
    for (int e : j) {
        for (int i = 1; i <= e; ++i) r = r * (++d) / i;
    }
    return r;
}

std::vector<ExponentIndex> exponent_indices(int d, int n) {
    std::vector<ExponentIndex> out;
    ExponentIndex cur(n, 0);
    // lexicographic over (j_1,...,j_n), descending j_1 first gives lex order
    // on the vectors themselves when generated recursively
    std::function<void(int, int)> rec = [&](int pos, int rem) {
        if (pos == n - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int e = rem; e >= 0; --e) {
            cur[pos] = e;
            rec(pos + 1, rem - e);
        }
    };
    rec(0, d);
    return out;
}

ExponentIndex exponent_of(const std::vector<int>& idx0, int n) {
    ExponentIndex j(n, 0);
    for (int i : idx0) ++j[i];
    return j;
}

template <class S>
DenseTensor<S> poly_to_tensor(const HomogeneousPolynomial<S>& f) {
    Shape s{std::vector<int>(f.d, f.n)};
    DenseTensor<S> t(s);
    std::vector<int> idx;
    for (int64_t off = 0; off < s.num_entries(); ++off) {
        unravel(off, s, idx);
        auto it = f.coeffs.find(exponent_of(idx, f.n));
        if (it != f.coeffs.end()) t.entries[off] = it->second;
    }
    return t;
}
template DenseTensor<GaussianRational> poly_to_tensor(const HomogeneousPolynomial<GaussianRational>&);
template DenseTensor<Complex> poly_to_tensor(const HomogeneousPolynomial<Complex>&);

namespace {
// T[i] must equal T[sort(i)] for every index; this implies full permutation
// invariance
template <class S, class Eq>
bool symmetric_impl(const DenseTensor<S>& t, Eq eq) {
    const int d = t.shape.order(), n = t.shape.dims[0];
    for (int j = 1; j < d; ++j)
        if (t.shape.dims[j] != n) return false;
    std::vector<int> idx, sorted;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        sorted = idx;
        std::sort(sorted.begin(), sorted.end());
        if (!eq(t.entries[off], t.entries[ravel(sorted, t.shape)])) return false;
    }
    return true;
}
} // namespace

bool is_symmetric(const QTensor& t) {
    return symmetric_impl(t, [](const GaussianRational& a, const GaussianRational& b) { return a == b; });
}
bool is_symmetric(const CTensor& t, double tol) {
    double scale = 0;
    for (const Complex& v : t.entries) scale = std::max(scale, std::abs(v));
    if (scale == 0) scale = 1;
    return symmetric_impl(t, [tol, scale](const Complex& a, const Complex& b) {
        return std::abs(a - b) <= tol * scale;
    });
}

namespace {
template <class S>
HomogeneousPolynomial<S> tensor_to_poly_impl(const DenseTensor<S>& t) {
    HomogeneousPolynomial<S> f;
    f.d = t.shape.order();
    f.n = t.shape.dims[0];
    std::vector<int> idx;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        bool sorted = std::is_sorted(idx.begin(), idx.end());
        if (!sorted) continue; // one representative per orbit
        if (!scalar_is_zero(t.entries[off])) f.coeffs[exponent_of(idx, f.n)] = t.entries[off];
    }
    return f;
}
} // namespace

HomogeneousPolynomial<GaussianRational> tensor_to_poly(const QTensor& t) {
    if (!is_symmetric(t)) throw std::invalid_argument("tensor_to_poly: input is not symmetric");
    return tensor_to_poly_impl(t);
}
HomogeneousPolynomial<Complex> tensor_to_poly(const CTensor& t, double tol) {
    if (!is_symmetric(t, tol)) throw std::invalid_argument("tensor_to_poly: input is not symmetric");
    return tensor_to_poly_impl(t);
}

QTensor w_state(int d) {
    if (d < 2) throw std::invalid_argument("w_state: d >= 2");
    QTensor t{Shape(std::vector<int>(d, 2))};
    std::vector<int> idx(d, 0);
    for (int pos = 0; pos < d; ++pos) {
        std::fill(idx.begin(), idx.end(), 0);
        idx[pos] = 1;
        t.at(idx) = GaussianRational(1);
    }
    return t;
}

QTensor ghz_state(int n, int d) {
    if (n < 2 || d < 2) throw std::invalid_argument("ghz_state: n, d >= 2");
    QTensor t{Shape(std::vector<int>(d, n))};
    std::vector<int> idx(d);
    for (int i = 0; i < n; ++i) {
        std::fill(idx.begin(), idx.end(), i);
        t.at(idx) = GaussianRational(1);
    }
    return t;
}

CTensor w_state_normalized(int d) {
    CTensor t = to_numeric(w_state(d));
    double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (auto& v : t.entries) v *= s;
    return t;
}

CTensor ghz_state_normalized(int n, int d) {
    CTensor t = to_numeric(ghz_state(n, d));
    double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (auto& v : t.entries) v *= s;
    return t;
}

AhRank ah_generic_symmetric_rank(int d, int n) {
    if (d < 1 || n < 1) throw std::invalid_argument("ah_generic_symmetric_rank: d, n >= 1");
    AhRank out;
    if (d == 2) {
        out.value = n;
        out.quadratic = true;
        return out;
    }
    int64_t dim = binomial(n + d - 1, d);
    out.value = (dim + n - 1) / n;
    const std::pair<int, int> exceptions[] = {{4, 3}, {4, 4}, {3, 5}, {4, 5}};
    for (auto [ed, en] : exceptions)
        if (d == ed && n == en) {
            out.value += 1;
            out.exceptional = true;
        }
    return out;
}

int64_t symmetric_terracini_rank(int d, int n, int r, uint64_t seed, uint64_t prime) {
    auto J = exponent_indices(d, n);
    const int64_t C = static_cast<int64_t>(J.size());
    if (C > 100000) throw std::invalid_argument("symmetric_terracini_rank: J(d,n) too large");
    if (static_cast<int64_t>(r) * n < C) return static_cast<int64_t>(r) * n; // dimension count decides
    SplitMix64 g(seed);
    GfMat m(C, static_cast<int64_t>(r) * n, prime);
    // powers x_i^(j - e_l) via per-point power tables
    for (int i = 0; i < r; ++i) {
        std::vector<std::vector<uint64_t>> pw(n); // pw[v][e] = x_v^e
        for (int v = 0; v < n; ++v) {
            uint64_t x = g.below(prime);
            pw[v].resize(d + 1);
            pw[v][0] = 1;
            for (int e = 1; e <= d; ++e) pw[v][e] = mulmod(pw[v][e - 1], x, prime);
        }
        for (int l = 0; l < n; ++l) {
            int64_t col = static_cast<int64_t>(i) * n + l;
            for (int64_t row = 0; row < C; ++row) {
                const auto& j = J[row];
                if (j[l] == 0) continue;
                uint64_t v = j[l] % prime;
                for (int u = 0; u < n; ++u) v = mulmod(v, pw[u][u == l ? j[u] - 1 : j[u]], prime);
                m.at(row, col) = v;
            }
        }
    }
    return gf_rank(std::move(m));
}

MaxSymRank known_max_symmetric_rank(int d, int n) {
    MaxSymRank out;
    if (n == 2 && d >= 2) {
        out.value = d;
        out.exact = true;
        return out;
    }
    if (n == 3 && d == 3) { out.value = 5; out.exact = true; return out; }
    if (n == 3 && d == 4) { out.value = 7; out.exact = true; return out; }
    if (n == 3 && d == 5) { out.value = 10; out.exact = true; return out; }
    out.value = 2 * ah_generic_symmetric_rank(d, n).value - 1;
    out.exact = false;
    if (d == 3 && n == 4) out.known_lower = 7;
    return out;
}

namespace {
RankOneTerm<GaussianRational> symmetric_cube(const std::vector<GaussianRational>& a,
                                             const GaussianRational& w) {
    return {w, {a, a, a}};
}
} // namespace

Decomposition<GaussianRational> waring_w3kron_decomposition() {
    // f = 3 x1^2 x4 + 6 x1 x2 x3 on C^4, cube terms from
    //   6 x1^2 x4  = (x1+x4)^3 - (x1-x4)^3 - 2 x4^3
    //   24 x1 x2 x3 = (x1+x2+x3)^3 - (-x1+x2+x3)^3 - (x1-x2+x3)^3 - (x1+x2-x3)^3
    using G = GaussianRational;
    auto q = [](long num, long den) { return G::from_ratio(num, den); };
    auto vec = [&](long a, long b, long c, long d) {
        return std::vector<G>{G(a), G(b), G(c), G(d)};
    };
    Decomposition<G> dec;
    dec.shape = Shape({4, 4, 4});
    dec.terms = {
        symmetric_cube(vec(1, 0, 0, 1), q(1, 2)),
        symmetric_cube(vec(1, 0, 0, -1), q(-1, 2)),
        symmetric_cube(vec(0, 0, 0, 1), q(-1, 1)),
        symmetric_cube(vec(1, 1, 1, 0), q(1, 4)),
        symmetric_cube(vec(-1, 1, 1, 0), q(-1, 4)),
        symmetric_cube(vec(1, -1, 1, 0), q(-1, 4)),
        symmetric_cube(vec(1, 1, -1, 0), q(-1, 4)),
    };
    return dec;
}

Decomposition<Complex> border_rank_demo_wd(int d, double t) {
    if (t == 0.0) throw std::invalid_argument("border_rank_demo_wd: t must be nonzero");
    Decomposition<Complex> dec;
    dec.shape = Shape(std::vector<int>(d, 2));
    std::vector<Complex> e1 = {1.0, 0.0}, perturbed = {1.0, t};
    RankOneTerm<Complex> plus{Complex(1.0 / t), std::vector<std::vector<Complex>>(d, perturbed)};
    RankOneTerm<Complex> minus{Complex(-1.0 / t), std::vector<std::vector<Complex>>(d, e1)};
    dec.terms = {plus, minus};
    return dec;
}

Decomposition<Complex> w3_tensor_square_decomposition() {
    // W (x) W = (W + z^3)^{(x)2} - (W + z^3/2)(x)z^3 - z^3(x)(W + z^3/2), z = e2,
    // with the rank-two pairs W + c z^3 = (1/(2s))(e1 + s e2)^3 - (1/(2s))(e1 - s e2)^3, s = sqrt(c)
    auto pair_terms = [](double c) {
        double s = std::sqrt(c);
        std::vector<Complex> up = {1.0, s}, um = {1.0, -s};
        return std::vector<std::pair<double, std::vector<Complex>>>{{1.0 / (2 * s), up},
                                                                    {-1.0 / (2 * s), um}};
    };
    auto A = pair_terms(1.0), B = pair_terms(0.5);
    std::vector<Complex> e2 = {0.0, 1.0};
    Decomposition<Complex> dec;
    dec.shape = Shape(std::vector<int>(6, 2));
    auto push = [&](double w, const std::vector<Complex>& x, const std::vector<Complex>& y) {
        RankOneTerm<Complex> t;
        t.weight = Complex(w);
        t.factors = {x, x, x, y, y, y};
        dec.terms.push_back(std::move(t));
    };
    for (const auto& [wa, ua] : A)
        for (const auto& [wb, ub] : A) push(wa * wb, ua, ub);
    for (const auto& [wb, ub] : B) push(-wb, ub, e2);
    for (const auto& [wb, ub] : B) push(-wb, e2, ub);
    return dec;
}

} // namespace tensorank
