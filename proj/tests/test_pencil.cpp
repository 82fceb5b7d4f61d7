#include "tensorank/pencil.hpp"

#include "tensorank/symmetric.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace tensorank;
using trt::gq;

namespace {

QTensor tensor_from_pencil(const QMat& a, const QMat& b) {
    QTensor t{Shape({a.rows, a.cols, 2})};
    std::vector<int> idx(3);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            idx = {i, j, 0};
            t.at(idx) = a(i, j);
            idx = {i, j, 1};
            t.at(idx) = b(i, j);
        }
    return t;
}

} // namespace

TEST_CASE("pencil_of: W3, GHZ, zero; orientation permutation") {
    Pencil pw = pencil_of(w_state(3));
    QMat w1(2, 2), w2(2, 2);
    w1(0, 1) = w1(1, 0) = gq(1);
    w2(0, 0) = gq(1);
    CHECK(pw.A == w1);
    CHECK(pw.B == w2);

    Pencil pg = pencil_of(ghz_state(2, 3));
    CHECK(pg.A(0, 0) == gq(1));
    CHECK(pg.B(1, 1) == gq(1));
    CHECK(pg.A(1, 1).is_zero());

    QTensor z{Shape({3, 4, 2})};
    Pencil pz = pencil_of(z);
    CHECK(pz.A == QMat(3, 4));

    QTensor no2{Shape({3, 3, 3})};
    CHECK_THROWS_AS(pencil_of(no2), std::invalid_argument);
}

TEST_CASE("find_regular_witness: W3 at (1,0), GHZ, scalar multiples have none") {
    Pencil pw = pencil_of(w_state(3));
    auto w = find_regular_witness(pw);
    REQUIRE(w);
    CHECK(w->first == 1);
    CHECK(w->second == 0); // det W1 = -1 != 0

    Pencil pg = pencil_of(ghz_state(2, 3));
    CHECK(find_regular_witness(pg));

    QMat s(2, 2);
    s(0, 0) = gq(1); // singular rank-one slice, pencil of scalar multiples
    Pencil dep{s, s};
    CHECK(!find_regular_witness(dep));
}

TEST_CASE("invariant_polynomials: Jordan vs diagonalizable cores") {
    // (I2, W1^{-1} W2 form): single invariant polynomial with a double root
    Pencil pw = pencil_of(w_state(3));
    auto polys = invariant_polynomials(pw, {Rational(1), Rational(0)});
    REQUIRE(polys.size() == 1);
    CHECK(polys[0].degree() == 2);
    CHECK(has_multiple_root(polys[0]));
    CHECK(count_multiple_root_factors(polys) == 1);

    // (I_m, diag with distinct eigenvalues): all factors squarefree
    QMat i4 = QMat::identity(4);
    QMat diag(4, 4);
    for (int i = 0; i < 4; ++i) diag(i, i) = GaussianRational(i + 1);
    auto pd = invariant_polynomials(Pencil{i4, diag}, {Rational(1), Rational(0)});
    CHECK(count_multiple_root_factors(pd) == 0);
    int64_t degsum = 0;
    for (const auto& p : pd) degsum += p.degree();
    CHECK(degsum == 4);

    // (I_3, companion of t^3): one factor t^3, repeated root
    QMat cm(3, 3);
    cm(0, 1) = gq(1);
    cm(1, 2) = gq(1);
    auto pc = invariant_polynomials(Pencil{QMat::identity(3), cm}, {Rational(1), Rational(0)});
    REQUIRE(pc.size() == 1);
    CHECK(pc[0].degree() == 3);
    CHECK(count_multiple_root_factors(pc) == 1);

    // invalid witness rejected
    QMat sing(2, 2);
    sing(0, 0) = gq(1);
    CHECK_THROWS_AS(invariant_polynomials(Pencil{sing, sing}, {Rational(1), Rational(0)}),
                    std::invalid_argument);
}

TEST_CASE("count_multiple_root_factors on explicit polynomials") {
    Poly t2({gq(0), gq(0), gq(1)});    // t^2
    Poly t2m1({gq(-1), gq(0), gq(1)}); // t^2 - 1
    CHECK(count_multiple_root_factors({t2}) == 1);
    CHECK(count_multiple_root_factors({t2m1}) == 0);
    // [(t-1)^2 (t-2), (t-1)]
    Poly a = Poly({gq(-1), gq(1)}) * Poly({gq(-1), gq(1)}) * Poly({gq(-2), gq(1)});
    Poly b({gq(-1), gq(1)});
    CHECK(count_multiple_root_factors({a, b}) == 1);
}

TEST_CASE("kronecker_structure: singular blocks and regular cores") {
    // 1x2 pencil ([1 0],[0 1]): one column minimal index eps = 1, no core
    QMat a(1, 2), b(1, 2);
    a(0, 0) = gq(1);
    b(0, 1) = gq(1);
    KroneckerStructure st = kronecker_structure(Pencil{a, b});
    CHECK(st.column_minimal_indices == std::vector<int>{1});
    CHECK(st.row_minimal_indices.empty());
    CHECK(st.regular_core_dim == 0);

    // square regular pencil: no minimal indices, core dim m
    trt::SplitMix64 g(17);
    QMat x = trt::random_invertible(3, g), y = trt::random_invertible(3, g);
    KroneckerStructure sr = kronecker_structure(Pencil{x, y});
    CHECK(sr.column_minimal_indices.empty());
    CHECK(sr.row_minimal_indices.empty());
    CHECK(sr.regular_core_dim == 3);

    // direct sum of the 1x2 singular block and a diagonalizable 2x2 core
    QMat A(3, 4), B(3, 4);
    A(0, 0) = gq(1);
    B(0, 1) = gq(1);
    A(1, 2) = gq(1);
    A(2, 3) = gq(1);
    B(1, 2) = gq(1);
    B(2, 3) = gq(2);
    KroneckerStructure sd = kronecker_structure(Pencil{A, B});
    CHECK(sd.column_minimal_indices == std::vector<int>{1});
    CHECK(sd.regular_core_dim == 2);
    CHECK(count_multiple_root_factors(sd.invariant_polynomials) == 0);
}

TEST_CASE("rank_mxnx2: named states and degenerate cases") {
    CHECK(rank_mxnx2(w_state(3)).rank == 3);
    CHECK(rank_mxnx2(ghz_state(2, 3)).rank == 2);
    CHECK(rank_mxnx2(ghz_state(2, 3)).certificate == PencilCertificate::Regular);

    QTensor z{Shape({3, 3, 2})};
    PencilRankResult rz = rank_mxnx2(z);
    CHECK(rz.rank == 0);
    CHECK(rz.certificate == PencilCertificate::Degenerate);

    // dependent slices: rank = rank of the nonzero slice
    trt::SplitMix64 g(23);
    QMat m = trt::random_invertible(3, g);
    QMat m2 = gq(2) * m;
    PencilRankResult rd = rank_mxnx2(tensor_from_pencil(m, m2));
    CHECK(rd.certificate == PencilCertificate::Degenerate);
    CHECK(rd.rank == 3);

    // the L_1 block tensor e1(x)e1(x)e1 + e1(x)e2(x)e2 has rank 2
    QMat a(1, 2), b(1, 2);
    a(0, 0) = gq(1);
    b(0, 1) = gq(1);
    CHECK(rank_mxnx2(tensor_from_pencil(a, b)).rank == 2);
}

TEST_CASE("rank_mxnx2: regular cores with known k") {
    // (I4, J2(0) + J2(0)): two nilpotent Jordan blocks, k = 2, rank 6
    QMat i4 = QMat::identity(4), j(4, 4);
    j(0, 1) = gq(1);
    j(2, 3) = gq(1);
    PencilRankResult r = rank_mxnx2(tensor_from_pencil(i4, j));
    CHECK(r.rank == 6);
    CHECK(r.rank == max_rank_mn2(4, 4));

    // (I4, J2(0) + J2(1)): Jordan blocks at distinct eigenvalues merge into
    // one invariant polynomial, k = 1, rank 5
    QMat j2(4, 4);
    j2(0, 1) = gq(1);
    j2(2, 2) = gq(1);
    j2(3, 3) = gq(1);
    j2(2, 3) = gq(1);
    CHECK(rank_mxnx2(tensor_from_pencil(i4, j2)).rank == 5);
}

TEST_CASE("random m x n x 2: flattening <= rank <= max-rank, 500 instances") {
    trt::SplitMix64 g(31337);
    for (int rep = 0; rep < 500; ++rep) {
        int m = 2 + static_cast<int>(g.below(5)), n = 2 + static_cast<int>(g.below(5));
        QTensor t = trt::random_int_tensor(Shape({m, n, 2}), g);
        PencilRankResult r = rank_mxnx2(t);
        for (int mode = 1; mode <= 3; ++mode)
            CHECK(exact_rank(flatten(t, {mode})) <= r.rank);
        CHECK(r.rank <= max_rank_mn2(m, n));
    }
}

TEST_CASE("GL invariance of the pencil rank") {
    trt::SplitMix64 g(999);
    for (int rep = 0; rep < 25; ++rep) {
        int m = 2 + static_cast<int>(g.below(3)), n = 2 + static_cast<int>(g.below(3));
        QTensor t = trt::random_int_tensor(Shape({m, n, 2}), g);
        int r0 = rank_mxnx2(t).rank;
        QTensor tt = trt::mode_multiply(t, 0, trt::random_invertible(m, g));
        tt = trt::mode_multiply(tt, 1, trt::random_invertible(n, g));
        tt = trt::mode_multiply(tt, 2, trt::random_invertible(2, g));
        CHECK(rank_mxnx2(tt).rank == r0);
    }
}

TEST_CASE("pencil-level direct sums add for random instances") {
    // random cores have disjoint simple spectra almost surely, so the
    // block-diagonal pencil rank adds
    trt::SplitMix64 g(555);
    for (int rep = 0; rep < 30; ++rep) {
        int m1 = 2 + static_cast<int>(g.below(3)), n1 = 2 + static_cast<int>(g.below(3));
        int m2 = 2 + static_cast<int>(g.below(3)), n2 = 2 + static_cast<int>(g.below(3));
        QTensor t1 = trt::random_int_tensor(Shape({m1, n1, 2}), g);
        QTensor t2 = trt::random_int_tensor(Shape({m2, n2, 2}), g);
        Pencil p1 = pencil_of(t1), p2 = pencil_of(t2);
        QMat A(m1 + m2, n1 + n2), B(m1 + m2, n1 + n2);
        for (int i = 0; i < m1; ++i)
            for (int j = 0; j < n1; ++j) {
                A(i, j) = p1.A(i, j);
                B(i, j) = p1.B(i, j);
            }
        for (int i = 0; i < m2; ++i)
            for (int j = 0; j < n2; ++j) {
                A(m1 + i, n1 + j) = p2.A(i, j);
                B(m1 + i, n1 + j) = p2.B(i, j);
            }
        CHECK(rank_mxnx2(tensor_from_pencil(A, B)).rank ==
              rank_mxnx2(t1).rank + rank_mxnx2(t2).rank);
    }
}

TEST_CASE("generic m x m x 2 has rank m") {
    trt::SplitMix64 g(2718);
    for (int m = 2; m <= 6; ++m)
        for (int rep = 0; rep < 10; ++rep) {
            QTensor t = trt::random_int_tensor(Shape({m, m, 2}), g);
            CHECK(rank_mxnx2(t).rank == m);
        }
}

TEST_CASE("classify_222: named states and the W orbit") {
    Rank222Class w = classify_222(w_state(3));
    CHECK(w.rank == 3);
    CHECK(w.orbit_label == Rank222Label::WClass);

    Rank222Class ghz = classify_222(ghz_state(2, 3));
    CHECK(ghz.rank == 2);
    CHECK(ghz.orbit_label == Rank222Label::GhzClass);

    Decomposition<GaussianRational> prod{
        Shape({2, 2, 2}), {{gq(1), {trt::qvec({1, 0}), trt::qvec({1, 0}), trt::qvec({1, 0})}}}};
    Rank222Class p = classify_222(evaluate(prod));
    CHECK(p.rank == 1);
    CHECK(p.orbit_label == Rank222Label::Product);

    CHECK(classify_222(QTensor{Shape({2, 2, 2})}).rank == 0);

    // biseparable: T = e1 (x) (e1e1 + e2e2), every pencil combination singular
    Decomposition<GaussianRational> bisep{
        Shape({2, 2, 2}),
        {{gq(1), {trt::qvec({1, 0}), trt::qvec({1, 0}), trt::qvec({1, 0})}},
         {gq(1), {trt::qvec({1, 0}), trt::qvec({0, 1}), trt::qvec({0, 1})}}}};
    Rank222Class b = classify_222(evaluate(bisep));
    CHECK(b.rank == 2);
    CHECK(b.orbit_label == Rank222Label::SingularSpan);

    // random GL action keeps the W class
    trt::SplitMix64 g(41);
    for (int rep = 0; rep < 20; ++rep) {
        QTensor t = w_state(3);
        for (int mode = 0; mode < 3; ++mode)
            t = trt::mode_multiply(t, mode, trt::random_invertible(2, g));
        Rank222Class c = classify_222(t);
        CHECK(c.rank == 3);
        CHECK(c.orbit_label == Rank222Label::WClass);
    }
}

TEST_CASE("max_rank_mn2 closed form") {
    CHECK(max_rank_mn2(2, 2) == 3);
    CHECK(max_rank_mn2(3, 3) == 4);
    CHECK(max_rank_mn2(2, 5) == 4);
    CHECK(max_rank_mn2(5, 2) == 4);
    CHECK(max_rank_mn2(4, 4) == 6);
    CHECK(max_rank_mn2(3, 5) == 5);
    CHECK_THROWS_AS(max_rank_mn2(0, 3), std::invalid_argument);
}
