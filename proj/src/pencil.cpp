#include "tensorank/pencil.hpp"

#include "tensorank/smith.hpp"

#include <algorithm>
#include <cassert>

namespace tensorank {

std::string to_string(PencilCertificate c) {
    switch (c) {
        case PencilCertificate::Regular: return "regular";
        case PencilCertificate::Singular: return "singular";
        default: return "degenerate";
    }
}

std::string to_string(Rank222Label l) {
    switch (l) {
        case Rank222Label::Zero: return "zero";
        case Rank222Label::Product: return "product";
        case Rank222Label::DependentSliceRank2: return "dependent-slice-rank2";
        case Rank222Label::SingularSpan: return "biseparable-singular-span";
        case Rank222Label::GhzClass: return "GHZ-class";
        default: return "W-class";
    }
}

namespace {

// permute so the pencil mode (size 2) is last; rank is invariant under mode
// permutations.  Picks the last mode of size 2 when several exist.
std::pair<QTensor, std::vector<int>> normalize_orientation(const QTensor& t) {
    if (t.shape.order() != 3) throw std::invalid_argument("rank_mxnx2: expects a 3-mode tensor");
    int pm = -1;
    for (int j = 2; j >= 0; --j)
        if (t.shape.dims[j] == 2) { pm = j; break; }
    if (pm < 0) throw std::invalid_argument("rank_mxnx2: no mode of size 2");
    std::vector<int> perm;
    for (int j = 0; j < 3; ++j)
        if (j != pm) perm.push_back(j);
    perm.push_back(pm);
    if (pm == 2) return {t, {1, 2, 3}};
    std::vector<int> dims = {t.shape.dims[perm[0]], t.shape.dims[perm[1]], t.shape.dims[perm[2]]};
    QTensor out{Shape(dims)};
    std::vector<int> idx, oidx(3);
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        for (int j = 0; j < 3; ++j) oidx[j] = idx[perm[j]];
        out.at(oidx) = t.entries[off];
    }
    return {out, {perm[0] + 1, perm[1] + 1, perm[2] + 1}};
}

QMat combine(const Pencil& p, const Rational& a, const Rational& b) {
    QMat m(p.m(), p.n());
    GaussianRational ga{a}, gb{b};
    for (size_t k = 0; k < m.a.size(); ++k) m.a[k] = ga * p.A.a[k] + gb * p.B.a[k];
    return m;
}

std::vector<std::pair<Rational, Rational>> witness_nodes(int m) {
    std::vector<std::pair<Rational, Rational>> nodes;
    for (int j = 0; j <= m; ++j) nodes.push_back({Rational(1), Rational(j)});
    nodes.push_back({Rational(0), Rational(1)});
    return nodes;
}

// kernel dimension of the block-Toeplitz matrix of polynomial solutions
// x(t) = x_0 + t x_1 + ... + t^{k-1} x_{k-1} of (A + tB) x(t) = 0:
//   rows: A x_0 = 0; B x_{j-1} + A x_j = 0; B x_{k-1} = 0
int64_t poly_solution_space_dim(const QMat& A, const QMat& B, int k) {
    const int m = A.rows, n = A.cols;
    QMat big((k + 1) * m, k * n);
    for (int blk = 0; blk < k; ++blk)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                big(blk * m + i, blk * n + j) = A(i, j);
                big((blk + 1) * m + i, blk * n + j) = B(i, j);
            }
    return static_cast<int64_t>(k) * n - exact_rank(big);
}

// minimal indices from the second difference of the kernel-dimension sequence
std::vector<int> minimal_indices(const QMat& A, const QMat& B, int expected_count) {
    std::vector<int> idx;
    if (expected_count == 0) return idx;
    std::vector<int64_t> nu = {0};
    int found = 0;
    for (int k = 1; found < expected_count; ++k) {
        nu.push_back(poly_solution_space_dim(A, B, k));
        int cnt_le = static_cast<int>(nu[k] - nu[k - 1]); // #{eps_i <= k-1}
        int prev_le = k >= 2 ? static_cast<int>(nu[k - 1] - nu[k - 2]) : 0;
        for (int c = 0; c < cnt_le - prev_le; ++c) idx.push_back(k - 1);
        found = cnt_le;
        if (k > A.cols + 1) throw std::logic_error("minimal index recovery did not terminate");
    }
    return idx;
}

} // namespace

Pencil pencil_of(const QTensor& t) {
    auto [tt, perm] = normalize_orientation(t);
    (void)perm;
    const int m = tt.shape.dims[0], n = tt.shape.dims[1];
    Pencil p{QMat(m, n), QMat(m, n)};
    std::vector<int> idx(3);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) {
            idx = {i, j, 0};
            p.A(i, j) = tt.at(idx);
            idx = {i, j, 1};
            p.B(i, j) = tt.at(idx);
        }
    return p;
}

std::optional<std::pair<Rational, Rational>> find_regular_witness(const Pencil& p) {
    if (p.m() != p.n()) throw std::invalid_argument("find_regular_witness: square pencils only");
    for (const auto& [a, b] : witness_nodes(p.m()))
        if (!exact_det(combine(p, a, b)).is_zero()) return std::make_pair(a, b);
    return std::nullopt;
}

std::vector<Poly> invariant_polynomials(const Pencil& p, const std::pair<Rational, Rational>& w) {
    const auto& [a, b] = w;
    QMat X = combine(p, a, b);
    if (p.m() != p.n() || exact_det(X).is_zero())
        throw std::invalid_argument("invariant_polynomials: witness does not give an invertible combination");
    // complete (a,b) to a basis of the pencil plane
    Rational c = (b != 0) ? Rational(1) : Rational(0);
    Rational d = (b != 0) ? Rational(0) : Rational(1);
    QMat Y = combine(p, c, d);
    PolyMat m(p.m(), p.n());
    for (int i = 0; i < p.m(); ++i)
        for (int j = 0; j < p.n(); ++j)
            m(i, j) = Poly({-Y(i, j), X(i, j)}); // t*X - Y
    auto factors = smith_invariant_factors(m);
    std::vector<Poly> out;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it)
        if (it->degree() >= 1) out.push_back(*it);
    return out;
}

int count_multiple_root_factors(const std::vector<Poly>& polys) {
    int k = 0;
    for (const Poly& p : polys)
        if (has_multiple_root(p)) ++k;
    return k;
}

KroneckerStructure kronecker_structure(const Pencil& p) {
    const int m = p.m(), n = p.n();
    KroneckerStructure st;

    // normal rank: max over min(m,n)+2 nodes; the rank-deficient set of a
    // pencil is at most min(m,n) projective points
    int rho = 0;
    std::pair<Rational, Rational> best{Rational(1), Rational(0)};
    for (const auto& [a, b] : witness_nodes(std::min(m, n))) {
        int r = exact_rank(combine(p, a, b));
        if (r > rho) { rho = r; best = {a, b}; }
    }
    st.normal_rank = rho;

    st.column_minimal_indices = minimal_indices(p.A, p.B, n - rho);
    st.row_minimal_indices = minimal_indices(p.A.transposed(), p.B.transposed(), m - rho);

    int64_t s_eps = 0, s_eta = 0;
    for (int e : st.column_minimal_indices) s_eps += e;
    for (int e : st.row_minimal_indices) s_eta += e;
    st.regular_core_dim = static_cast<int>(rho - s_eps - s_eta);
    // dimension bookkeeping must reconstruct (m, n)
    int64_t mm = s_eps + s_eta + st.row_minimal_indices.size() + st.regular_core_dim;
    int64_t nn = s_eps + s_eta + st.column_minimal_indices.size() + st.regular_core_dim;
    if (mm != m || nn != n || st.regular_core_dim < 0)
        throw std::logic_error("kronecker_structure: dimension bookkeeping failed");

    if (st.regular_core_dim > 0) {
        const auto& [a, b] = best;
        Rational c = (b != 0) ? Rational(1) : Rational(0);
        Rational d = (b != 0) ? Rational(0) : Rational(1);
        // (ta-c)A + (tb-d)B: the L-blocks contribute trivial invariant
        // factors, the core contributes its invariant polynomials with every
        // eigenvalue mapped to a finite point
        PolyMat pm(m, n);
        GaussianRational ga{a}, gb{b}, gc{c}, gd{d};
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                pm(i, j) = Poly({GaussianRational(0) - (gc * p.A(i, j) + gd * p.B(i, j)),
                                 ga * p.A(i, j) + gb * p.B(i, j)});
        auto factors = smith_invariant_factors(pm);
        int64_t degsum = 0;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it)
            if (it->degree() >= 1) {
                st.invariant_polynomials.push_back(*it);
                degsum += it->degree();
            }
        if (degsum != st.regular_core_dim)
            throw std::logic_error("kronecker_structure: invariant factor degrees do not match core");
        for (size_t i = 0; i + 1 < st.invariant_polynomials.size(); ++i)
            if (!st.invariant_polynomials[i + 1].divides(st.invariant_polynomials[i]))
                throw std::logic_error("kronecker_structure: divisibility chain broken");
    }
    return st;
}

PencilRankResult rank_mxnx2(const QTensor& t) {
    auto [tt, perm] = normalize_orientation(t);
    PencilRankResult res;
    res.mode_permutation = perm;
    Pencil p = pencil_of(tt);

    // degenerate pencil: slices span at most a line in C^{m x n}
    QMat vecs(2, p.m() * p.n());
    for (int k = 0; k < p.m() * p.n(); ++k) {
        vecs(0, k) = p.A.a[k];
        vecs(1, k) = p.B.a[k];
    }
    int span = exact_rank(vecs);
    if (span <= 1) {
        res.certificate = PencilCertificate::Degenerate;
        int ra = exact_rank(p.A), rb = exact_rank(p.B);
        res.rank = std::max(ra, rb);
        res.structure = kronecker_structure(p);
        return res;
    }

    res.structure = kronecker_structure(p);
    const auto& st = res.structure;
    bool singular = !st.column_minimal_indices.empty() || !st.row_minimal_indices.empty();
    res.certificate = singular ? PencilCertificate::Singular : PencilCertificate::Regular;

    int rank = st.regular_core_dim + count_multiple_root_factors(st.invariant_polynomials);
    // an L_eps block contributes max(eps, eps+1) for eps >= 1 and 0 for eps = 0
    for (int e : st.column_minimal_indices)
        if (e >= 1) rank += e + 1;
    for (int e : st.row_minimal_indices)
        if (e >= 1) rank += e + 1;
    res.rank = rank;
    return res;
}

Rank222Class classify_222(const QTensor& t) {
    if (t.shape.dims != std::vector<int>{2, 2, 2})
        throw std::invalid_argument("classify_222: shape must be (2,2,2)");
    Rank222Class out;
    if (t.is_zero()) return out;
    PencilRankResult r = rank_mxnx2(t);
    out.rank = r.rank;
    Pencil p = pencil_of(t);
    if (r.rank == 1) {
        out.orbit_label = Rank222Label::Product;
    } else if (r.rank == 3) {
        out.orbit_label = Rank222Label::WClass;
    } else {
        if (r.certificate == PencilCertificate::Degenerate) {
            out.orbit_label = Rank222Label::DependentSliceRank2;
        } else {
            // det(aT1+bT2) = a^2 detA + ab mix + b^2 detB
            GaussianRational detA = exact_det(p.A), detB = exact_det(p.B);
            GaussianRational mix = p.A(0, 0) * p.B(1, 1) + p.B(0, 0) * p.A(1, 1) -
                                   p.A(0, 1) * p.B(1, 0) - p.B(0, 1) * p.A(1, 0);
            bool all_singular = detA.is_zero() && detB.is_zero() && mix.is_zero();
            out.orbit_label = all_singular ? Rank222Label::SingularSpan : Rank222Label::GhzClass;
        }
    }
    return out;
}

int max_rank_mn2(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("max_rank_mn2: dimensions must be >= 1");
    if (m > n) std::swap(m, n);
    if (n > 2 * m) return 2 * m;
    return m + n / 2;
}

} // namespace tensorank
