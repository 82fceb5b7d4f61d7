#include "tensorank/genrank.hpp"

#include "tensorank/matrix.hpp"
#include "tensorank/pencil.hpp"
#include "tensorank/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tensorank {

int64_t r0_lower_bound(const Shape& shape) {
    Shape s = shape.squeezed();
    int64_t N = s.num_entries(), M = s.segre_dim();
    if (M <= 0) return 1;
    return (N + M - 1) / M;
}

std::vector<std::vector<std::vector<uint64_t>>> terracini_points(const Shape& shape, int r,
                                                                 uint64_t p, uint64_t seed) {
    SplitMix64 g(seed);
    std::vector<std::vector<std::vector<uint64_t>>> pts(r);
    for (int i = 0; i < r; ++i) {
        pts[i].resize(shape.order());
        for (int j = 0; j < shape.order(); ++j) {
            pts[i][j].resize(shape.dims[j]);
            for (int l = 0; l < shape.dims[j]; ++l) pts[i][j][l] = g.below(p);
        }
    }
    return pts;
}

GfMat terracini_jacobian(const Shape& shape, int r,
                         const std::vector<std::vector<std::vector<uint64_t>>>& pts, uint64_t p) {
    const int d = shape.order();
    int64_t sumn = 0;
    for (int n : shape.dims) sumn += n;
    const int64_t rows = shape.num_entries(), cols = static_cast<int64_t>(r) * sumn;
    if (rows * cols > 100000000ll) throw std::invalid_argument("terracini_jacobian: dimension overflow guard");
    GfMat m(rows, cols, p);
    std::vector<int> idx;
    int64_t col = 0;
    for (int i = 0; i < r; ++i) {
        for (int k = 0; k < d; ++k) {
            for (int l = 0; l < shape.dims[k]; ++l, ++col) {
                // column = vec of (x_1 (x) ... e_l at mode k ... (x) x_d) for term i
                for (int64_t off = 0; off < rows; ++off) {
                    unravel(off, shape, idx);
                    if (idx[k] != l) continue;
                    uint64_t v = 1;
                    for (int j = 0; j < d; ++j) {
                        if (j == k) continue;
                        v = mulmod(v, pts[i][j][idx[j]], p);
                        if (!v) break;
                    }
                    m.at(off, col) = v;
                }
            }
        }
    }
    return m;
}

int64_t terracini_dimension(const Shape& shape, int r, const GenrankOptions& opt) {
    Shape s = shape.squeezed();
    const int64_t N = s.num_entries(), M = s.segre_dim();
    if (static_cast<int64_t>(r) * M < N) return static_cast<int64_t>(r) * M; // dimension count decides
    int64_t best = 0;
    for (int trial = 0; trial < opt.trials; ++trial) {
        auto pts = terracini_points(s, r, opt.prime, derive_seed(opt.seed, static_cast<uint64_t>(r), trial));
        int64_t rk = gf_rank(terracini_jacobian(s, r, pts, opt.prime));
        best = std::max(best, rk);
        if (best == N) break; // a single full-rank witness is conclusive
    }
    return best;
}

int64_t terracini_dimension_numeric(const Shape& shape, int r, uint64_t seed, double tol) {
    Shape s = shape.squeezed();
    const int d = s.order();
    int64_t sumn = 0;
    for (int n : s.dims) sumn += n;
    const int64_t rows = s.num_entries(), cols = static_cast<int64_t>(r) * sumn;
    SplitMix64 g(seed);
    std::vector<std::vector<std::vector<double>>> pts(r);
    for (int i = 0; i < r; ++i) {
        pts[i].resize(d);
        for (int j = 0; j < d; ++j) {
            pts[i][j].resize(s.dims[j]);
            for (int l = 0; l < s.dims[j]; ++l) pts[i][j][l] = 0.5 + g.real();
        }
    }
    Mat<Complex> m(static_cast<int>(rows), static_cast<int>(cols));
    std::vector<int> idx;
    int col = 0;
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < s.dims[k]; ++l, ++col)
                for (int64_t off = 0; off < rows; ++off) {
                    unravel(off, s, idx);
                    if (idx[k] != l) continue;
                    double v = 1;
                    for (int j = 0; j < d; ++j)
                        if (j != k) v *= pts[i][j][idx[j]];
                    m(static_cast<int>(off), col) = v;
                }
    return numeric_rank(m, tol);
}

GenericRankResult generic_rank(const Shape& shape, const GenrankOptions& opt) {
    Shape s = shape.squeezed();
    const int64_t N = s.num_entries();
    if (N > 1000000ll) throw std::invalid_argument("generic_rank: N(n) exceeds desk scale");
    GenericRankResult res;
    res.r0 = r0_lower_bound(s);
    int64_t sumn = 0;
    for (int n : s.dims) sumn += n;
    const int64_t r_cap = N; // r_gen <= N always; loop must terminate well before
    for (int64_t r = res.r0; r <= r_cap; ++r) {
        int64_t dim = terracini_dimension(s, static_cast<int>(r), opt);
        res.d_sequence.push_back({r, dim});
        if (dim == N) {
            res.r_gen = r;
            res.jacobian_rows = N;
            res.jacobian_cols = r * sumn;
            return res;
        }
    }
    throw std::runtime_error("generic_rank: budget exceeded before full rank");
}

std::optional<int64_t> threshold_generic_rank(const Shape& shape) {
    std::vector<int> dims = shape.squeezed().dims;
    std::sort(dims.begin(), dims.end());
    if (dims.size() < 2 || dims[0] < 2) return std::nullopt;
    const int d = static_cast<int>(dims.size());
    int64_t P = 1, S = 0;
    for (int j = 0; j + 1 < d; ++j) {
        P *= dims[j];
        S += dims[j];
    }
    int64_t nd = dims[d - 1];
    if (nd >= P) return P; // slices span the whole space: r_gen = r_max = P
    if (nd >= P + (d - 1) - S) return nd;
    return std::nullopt;
}

QunitFormulas qunit_formulas(int64_t n, int64_t d) {
    if (n < 2 || d < 2) throw std::invalid_argument("qunit_formulas: need n >= 2, d >= 2");
    QunitFormulas q;
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(d));
    mpz_class den(d * (n - 1) + 1);
    q.theta = Rational(num, den);
    q.theta.canonicalize();
    mpz_class fl = num / den;
    q.floor_theta = fl.get_si();
    q.delta = static_cast<int>(mpz_class(fl % n).get_si());
    mpz_class ceil_theta = (num + den - 1) / den;
    int64_t ceilv = ceil_theta.get_si();
    if (n == 2) {
        q.value = ceilv;
        q.exact = true;
        q.method = "qubit closed form ceil(2^d/(d+1))";
    } else if (q.theta.get_den() == 1) {
        q.value = q.floor_theta;
        q.exact = true;
        q.method = "theta integral";
    } else if (q.delta == n - 1) {
        q.value = ceilv;
        q.exact = true;
        q.method = "delta = n-1";
    } else {
        q.value = ceilv + (n - 1 - q.delta);
        q.exact = false;
        q.method = "AOP upper bound";
    }
    return q;
}

MaxRankBounds max_rank_upper_bounds(int64_t m, int64_t n, int64_t p) {
    if (m < 1 || n < 1 || p < 1) throw std::invalid_argument("max_rank_upper_bounds: dims >= 1");
    int64_t dims[3] = {m, n, p};
    std::sort(dims, dims + 3);
    m = dims[0];
    n = dims[1];
    p = dims[2];
    MaxRankBounds out;
    auto add = [&](const std::string& label, int64_t v) { out.bounds.push_back({label, v}); };
    add("N/max-dim", m * n); // r(T) <= N(n)/max dim
    if (m == 2 || n == 2 || p == 2) {
        // remove one mode of size 2, exact m x n x 2 formula on the rest
        int64_t a = m, b = n;
        if (p != 2) { a = (m == 2) ? n : m; b = p; }
        add("m-n-2 exact formula", max_rank_mn2(static_cast<int>(a), static_cast<int>(b)));
    }
    if (m >= 3 && n == p) add("Atkinson (m+1)n/2", (m + 1) * n / 2);
    if (m >= 3 && p >= 3) add("Atkinson m + floor(p/2) n, sorted", m + (p / 2) * n);
    // Atkinson exact near-full: p = mn - u, u <= min(4,m,n)
    if (m >= 3) {
        int64_t u = m * n - p;
        if (u >= 0 && u <= std::min<int64_t>(4, m)) add("Atkinson mn - ceil(u/2)", m * n - (u + 1) / 2);
    }
    // the multiset {3,3,q} with q in [1,9] has a known exact r_max row
    {
        int64_t q = -1;
        if (m == 3 && n == 3) q = p;
        else if (n == 3 && p == 3) q = m;
        if (q >= 1 && q <= 9) add("3x3xp table", known_tables().max_rank_33p[q - 1].back());
    }
    // r_max <= 2 r_gen - 1 when r_gen is known in closed form
    std::optional<int64_t> rg = threshold_generic_rank(Shape({(int)m, (int)n, (int)p}));
    if (!rg && m == n && n == p) {
        QunitFormulas q = qunit_formulas(m, 3);
        if (q.exact) rg = q.value;
        auto t1 = table1_lookup(3, static_cast<int>(m));
        if (t1) rg = *t1;
    }
    if (rg) add("2 r_gen - 1", 2 * *rg - 1);
    out.value = out.bounds.front().second;
    for (const auto& [l, v] : out.bounds) out.value = std::min(out.value, v);
    return out;
}

int64_t r_u_bound(int64_t n, int64_t d) {
    int64_t pw = 1;
    for (int64_t i = 0; i < d; ++i) pw *= n;
    return pw - d * n * (n - 1) / 2;
}

namespace {
KnownTables build_tables() {
    KnownTables t;
    struct Row {
        int d;
        std::vector<std::pair<int64_t, const char*>> vals; // n=2.. ; value<0 means absent
    };
    auto E = [&](int d, int n, int64_t v, const char* prov) { t.table1.push_back({d, n, v, prov}); };
    // Table 1: values of the generic rank for d-qunit systems
    const char* ref = "referenced";
    const char* comp = "computed";
    E(2, 2, 2, ref); E(2, 3, 3, ref); E(2, 4, 4, ref); E(2, 5, 5, ref); E(2, 6, 6, ref);
    E(2, 7, 7, ref); E(2, 8, 8, ref); E(2, 9, 9, ref); E(2, 10, 10, ref);
    E(3, 2, 2, ref); E(3, 3, 5, ref); E(3, 4, 7, ref); E(3, 5, 10, ref); E(3, 6, 14, ref);
    E(3, 7, 19, ref); E(3, 8, 24, ref); E(3, 9, 30, ref); E(3, 10, 36, ref);
    E(4, 2, 4, ref); E(4, 3, 9, ref); E(4, 4, 20, ref); E(4, 5, 37, ref); E(4, 6, 62, ref);
    E(4, 7, 97, ref); E(4, 8, 142, comp); E(4, 9, 199, comp); E(4, 10, 271, comp);
    E(5, 2, 6, ref); E(5, 3, 23, comp); E(5, 4, 64, ref); E(5, 5, 149, comp); E(5, 6, 300, ref); E(5, 7, 543, comp);
    E(6, 2, 10, ref); E(6, 3, 57, ref); E(6, 4, 216, ref); E(6, 5, 625, ref); E(6, 6, 1506, ref);
    E(7, 2, 16, ref); E(7, 3, 146, comp); E(7, 4, 745, comp); E(7, 6, 7776, ref); E(7, 8, 41944, ref); E(7, 10, 156250, ref);
    E(8, 2, 29, ref); E(8, 3, 386, comp); E(8, 7, 117649, ref);
    E(9, 2, 52, ref); E(9, 3, 1036, comp); E(9, 8, 2097152, ref);
    E(10, 2, 94, ref); E(10, 6, 1185612, ref); E(10, 9, 43046721, ref); E(10, 10, 109890110, ref);
    E(11, 2, 171, ref); E(11, 5, 1085070, ref);
    E(12, 2, 316, ref); E(12, 3, 21258, ref); E(12, 10, 1000000000, ref);
    E(13, 2, 586, ref); E(13, 3, 59049, ref); E(13, 5, 23032135, ref);
    E(14, 2, 1093, ref); E(14, 6, 1103720622, ref);
    E(15, 2, 2048, ref);
    E(16, 2, 3856, ref); E(16, 5, 2347506010, ref); E(16, 6, 34828517376, ref);
    E(16, 8, 2490928997440, ref); E(16, 10, 68965517241380, ref);

    // Table 2: r_gen / r_max / R_U for d in {2,3,4}, n in {2..5}
    auto T2 = [&](int d, int n, int64_t rg, int64_t rm, bool rme, int64_t ru) {
        t.table2.push_back({d, n, rg, rm, ru, rme});
    };
    T2(2, 2, 2, 2, true, 2);  T2(2, 3, 3, 3, true, 3);  T2(2, 4, 4, 4, true, 4);  T2(2, 5, 5, 5, true, 5);
    T2(3, 2, 2, 3, true, 5);  T2(3, 3, 5, 5, true, 18); T2(3, 4, 7, 13, false, 46); T2(3, 5, 10, 20, false, 95);
    T2(4, 2, 4, 4, true, 12); T2(4, 3, 9, 18, false, 69); T2(4, 4, 20, 40, false, 232); T2(4, 5, 37, 74, false, 585);

    // r_max(3,3,p), p = 1..9; the p=5 entry is the unresolved set {6,7}
    t.max_rank_33p = {{3}, {4}, {5}, {6}, {6, 7}, {7}, {8}, {8}, {9}};
    return t;
}
} // namespace

const KnownTables& known_tables() {
    static const KnownTables t = build_tables();
    return t;
}

std::optional<int64_t> table1_lookup(int d, int n) {
    for (const auto& e : known_tables().table1)
        if (e.d == d && e.n == n) return e.value;
    return std::nullopt;
}

} // namespace tensorank
