#include "tensorank/hamming.hpp"

#include <algorithm>
#include <stdexcept>

namespace tensorank {

namespace {
constexpr int64_t kMaxVertices = 1000000;

void check_point(const Shape& shape, const HammingPoint& p) {
    if (static_cast<int>(p.size()) != shape.order())
        throw std::invalid_argument("hamming: point arity mismatch");
    for (int j = 0; j < shape.order(); ++j)
        if (p[j] < 1 || p[j] > shape.dims[j]) throw std::invalid_argument("hamming: point out of range");
}

int64_t point_offset(const Shape& shape, const HammingPoint& p) {
    int64_t off = 0;
    for (int j = 0; j < shape.order(); ++j) off = off * shape.dims[j] + (p[j] - 1);
    return off;
}

HammingPoint point_at(const Shape& shape, int64_t off) {
    HammingPoint p(shape.order());
    for (int j = shape.order() - 1; j >= 0; --j) {
        p[j] = static_cast<int>(off % shape.dims[j]) + 1;
        off /= shape.dims[j];
    }
    return p;
}

// visit closed ball of radius 1 (the vertex and all distance-1 neighbors)
template <class F>
void for_ball(const Shape& shape, int64_t off, F&& f) {
    f(off);
    auto st = strides_of(shape);
    HammingPoint p = point_at(shape, off);
    for (int j = 0; j < shape.order(); ++j) {
        int64_t base = off - static_cast<int64_t>(p[j] - 1) * st[j];
        for (int v = 0; v < shape.dims[j]; ++v) {
            if (v == p[j] - 1) continue;
            f(base + static_cast<int64_t>(v) * st[j]);
        }
    }
}
} // namespace

int hamming_distance(const HammingPoint& a, const HammingPoint& b) {
    int d = 0;
    for (size_t j = 0; j < a.size(); ++j) d += a[j] != b[j];
    return d;
}

bool verify_dominating(const Shape& shape, const VertexSet& s) {
    const int64_t N = shape.num_entries();
    if (N > kMaxVertices) throw std::invalid_argument("verify_dominating: N(n) too large");
    std::vector<char> covered(N, 0);
    for (const auto& p : s.points) {
        check_point(shape, p);
        for_ball(shape, point_offset(shape, p), [&](int64_t o) { covered[o] = 1; });
    }
    for (char c : covered)
        if (!c) return false;
    return true;
}

bool verify_3separated(const Shape& shape, const VertexSet& s) {
    for (const auto& p : s.points) check_point(shape, p);
    for (size_t i = 0; i < s.points.size(); ++i)
        for (size_t j = i + 1; j < s.points.size(); ++j)
            if (hamming_distance(s.points[i], s.points[j]) < 3) return false;
    return true;
}

VertexSet greedy_dominating(const Shape& shape) {
    const int64_t N = shape.num_entries();
    if (N > kMaxVertices) throw std::invalid_argument("greedy_dominating: N(n) too large");
    std::vector<char> alive(N, 1);
    // the Hamming graph is regular, so degrees only diverge as vertices leave
    std::vector<int> degree(N, static_cast<int>(shape.segre_dim() - 1));
    int64_t remaining = N;
    VertexSet out{shape, {}};
    while (remaining > 0) {
        int64_t pick = -1;
        int best = -1;
        for (int64_t v = 0; v < N; ++v)
            if (alive[v] && degree[v] > best) { best = degree[v]; pick = v; }
        std::vector<int64_t> removed;
        for_ball(shape, pick, [&](int64_t o) {
            if (alive[o]) { alive[o] = 0; removed.push_back(o); }
        });
        remaining -= static_cast<int64_t>(removed.size());
        for (int64_t o : removed)
            for_ball(shape, o, [&](int64_t nb) {
                if (nb != o && alive[nb]) --degree[nb];
            });
        out.points.push_back(point_at(shape, pick));
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

VertexSet greedy_3separated(const Shape& shape) {
    const int64_t N = shape.num_entries();
    if (N > kMaxVertices) throw std::invalid_argument("greedy_3separated: N(n) too large");
    VertexSet out{shape, {}};
    for (int64_t v = 0; v < N; ++v) {
        HammingPoint p = point_at(shape, v);
        bool ok = true;
        for (const auto& q : out.points)
            if (hamming_distance(p, q) < 3) { ok = false; break; }
        if (ok) out.points.push_back(std::move(p));
    }
    return out;
}

namespace {
bool prime_power(int64_t n, int64_t& q) {
    for (int64_t f = 2; f * f <= n; ++f) {
        if (n % f) continue;
        int64_t m = n;
        while (m % f == 0) m /= f;
        q = f;
        return m == 1; // n = f^l
    }
    q = n;
    return n >= 2; // n itself prime
}
} // namespace

std::optional<int64_t> perfect_code_rank(int64_t n, int64_t d) {
    if (n < 2 || d < 1) return std::nullopt;
    int64_t q;
    if (!prime_power(n, q)) return std::nullopt;
    // d = (n^{a+1}-1)/(n-1) = 1 + n + ... + n^a for some a >= 2
    int64_t acc = 1 + n, pw = n;
    for (int64_t a = 2; acc <= d; ++a) {
        pw *= n;
        acc += pw;
        if (acc == d) {
            int64_t v = 1;
            for (int64_t i = 0; i < d - a - 1; ++i) {
                if (v > (int64_t(1) << 62) / n) throw std::overflow_error("perfect_code_rank: value overflows");
                v *= n;
            }
            return v;
        }
    }
    return std::nullopt;
}

VertexSet perfect_code_set(int64_t q, int64_t a) {
    int64_t qq;
    if (!prime_power(q, qq) || qq != q)
        throw std::invalid_argument("perfect_code_set: generative construction needs q prime");
    if (a < 2) throw std::invalid_argument("perfect_code_set: a >= 2");
    int64_t d = 0, pw = 1;
    for (int64_t i = 0; i <= a; ++i) { d += pw; pw *= q; }
    const int64_t k = d - a - 1; // code dimension
    int64_t words = 1;
    for (int64_t i = 0; i < k; ++i) {
        words *= q;
        if (words > (1 << 20)) throw std::invalid_argument("perfect_code_set: too many codewords");
    }
    // parity check H: one representative per projective point of GF(q)^{a+1},
    // first nonzero coordinate 1, enumerated lexicographically
    std::vector<std::vector<int>> H;
    std::vector<int> col(a + 1, 0);
    int64_t total = 1;
    for (int64_t i = 0; i <= a; ++i) total *= q;
    for (int64_t code = 1; code < total; ++code) {
        int64_t c = code;
        for (int64_t i = a; i >= 0; --i) { col[i] = static_cast<int>(c % q); c /= q; }
        int lead = -1;
        for (int64_t i = 0; i <= a; ++i)
            if (col[i]) { lead = static_cast<int>(i); break; }
        if (col[lead] != 1) continue;
        H.push_back(col);
    }
    if (static_cast<int64_t>(H.size()) != d) throw std::logic_error("perfect_code_set: wrong column count");
    // kernel basis of H over GF(q): columns are d coordinates; since the a+1
    // columns e_1..e_{a+1} (unit projective points) appear in H, use them as
    // pivots and express each remaining coordinate freely
    std::vector<int> pivot_pos(a + 1, -1); // position in H of the unit column e_i
    for (int64_t j = 0; j < d; ++j) {
        int nz = 0, where = -1;
        for (int64_t i = 0; i <= a; ++i)
            if (H[j][i]) { ++nz; where = static_cast<int>(i); }
        if (nz == 1 && H[j][where] == 1) pivot_pos[where] = static_cast<int>(j);
    }
    std::vector<int> free_pos;
    for (int64_t j = 0; j < d; ++j)
        if (std::find(pivot_pos.begin(), pivot_pos.end(), j) == pivot_pos.end())
            free_pos.push_back(static_cast<int>(j));
    VertexSet out{Shape(std::vector<int>(d, static_cast<int>(q))), {}};
    std::vector<int> word(d, 0);
    for (int64_t w = 0; w < words; ++w) {
        std::fill(word.begin(), word.end(), 0);
        int64_t c = w;
        for (size_t f = 0; f < free_pos.size(); ++f) { word[free_pos[f]] = static_cast<int>(c % q); c /= q; }
        // solve pivots: sum_j H[j] * word[j] = 0
        for (int64_t i = 0; i <= a; ++i) {
            int64_t s = 0;
            for (int fp : free_pos) s += H[fp][i] * word[fp];
            word[pivot_pos[i]] = static_cast<int>(((q - (s % q)) % q));
        }
        HammingPoint p(d);
        for (int64_t j = 0; j < d; ++j) p[j] = word[j] + 1;
        out.points.push_back(std::move(p));
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

Rational fractional_bound(const Shape& shape) {
    Rational r(shape.num_entries(), shape.segre_dim());
    r.canonicalize();
    return r;
}

} // namespace tensorank
