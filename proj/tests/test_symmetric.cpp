#include "tensorank/symmetric.hpp"

#include "tensorank/pencil.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

#include "test_helpers.hpp"

using namespace tensorank;
using trt::gq;

TEST_CASE("poly_to_tensor: W3, pure power, W3 Kronecker square") {
    // f = sqrt(3) x1^2 x2 stores f_(2,1) = 1/sqrt(3); gives normalized W3
    HomogeneousPolynomial<Complex> f;
    f.d = 3;
    f.n = 2;
    f.set({2, 1}, Complex(1.0 / std::sqrt(3.0)));
    CTensor t = poly_to_tensor(f);
    CHECK(trt::max_abs_diff(t, w_state_normalized(3)) < 1e-15);

    HomogeneousPolynomial<GaussianRational> p;
    p.d = 4;
    p.n = 2;
    p.set({4, 0}, gq(1)); // x1^4 -> e1^{(x)4}
    QTensor e14 = poly_to_tensor(p);
    std::vector<int> idx(4, 0);
    CHECK(e14.at(idx) == gq(1));
    int64_t nz = 0;
    for (const auto& v : e14.entries) nz += !v.is_zero();
    CHECK(nz == 1);

    // f = 3 x1^2 x4 + 6 x1 x2 x3 stores f_j = 1 on both orbits: the W3
    // Kronecker square under the index pairing
    HomogeneousPolynomial<GaussianRational> q;
    q.d = 3;
    q.n = 4;
    q.set({2, 0, 0, 1}, gq(1));
    q.set({1, 1, 1, 0}, gq(1));
    CHECK(poly_to_tensor(q) == kronecker(w_state(3), w_state(3)));
}

TEST_CASE("tensor_to_poly round trips and symmetry rejection") {
    // GHZ <-> x1^3 + x2^3 (i.e. f_(3,0) = f_(0,3) = 1)
    auto fg = tensor_to_poly(ghz_state(2, 3));
    CHECK(fg.coeffs.size() == 2);
    CHECK(fg.coeffs.at({3, 0}) == gq(1));
    CHECK(fg.coeffs.at({0, 3}) == gq(1));
    CHECK(poly_to_tensor(fg) == ghz_state(2, 3));

    QTensor z{Shape({2, 2, 2})};
    CHECK(poly_to_tensor(tensor_to_poly(z)).is_zero());

    trt::SplitMix64 g(55);
    QTensor ns = trt::random_int_tensor(Shape({2, 2, 2}), g);
    std::vector<int> a = {0, 0, 1}, b = {0, 1, 0};
    ns.at(a) = gq(5);
    ns.at(b) = gq(6);
    CHECK_THROWS_AS(tensor_to_poly(ns), std::invalid_argument);
}

TEST_CASE("poly <-> tensor round trip on 100 random sparse polynomials") {
    trt::SplitMix64 g(808);
    for (int rep = 0; rep < 100; ++rep) {
        int d = 2 + static_cast<int>(g.below(4)); // d <= 5
        int n = 2 + static_cast<int>(g.below(3)); // n <= 4
        auto J = exponent_indices(d, n);
        HomogeneousPolynomial<GaussianRational> f;
        f.d = d;
        f.n = n;
        for (const auto& j : J)
            if (g.below(3) == 0) f.set(j, GaussianRational(g.range(-9, 9)));
        QTensor t = poly_to_tensor(f);
        CHECK(is_symmetric(t));
        auto back = tensor_to_poly(t);
        CHECK(back.coeffs == f.coeffs);
    }
}

TEST_CASE("symmetric tensors have C(n+d-1,d) entry orbits") {
    for (auto [d, n] : std::vector<std::pair<int, int>>{{3, 2}, {4, 2}, {3, 3}, {2, 4}}) {
        auto J = exponent_indices(d, n);
        CHECK(static_cast<int64_t>(J.size()) == binomial(n + d - 1, d));
        // distinct orbits of a random symmetric tensor
        trt::SplitMix64 g(d * 10 + n);
        HomogeneousPolynomial<GaussianRational> f;
        f.d = d;
        f.n = n;
        long v = 1;
        for (const auto& j : J) f.set(j, GaussianRational(v++)); // all distinct
        QTensor t = poly_to_tensor(f);
        std::set<std::string> seen;
        for (const auto& e : t.entries) seen.insert(e.str());
        CHECK(static_cast<int64_t>(seen.size()) == binomial(n + d - 1, d));
    }
}

TEST_CASE("named states") {
    CHECK(w_state(2).shape == Shape({2, 2}));
    CHECK(exact_rank(flatten(tensor_product(w_state(2), QTensor{Shape({1}), {gq(1)}}), {1})) == 2);
    CHECK(rank_mxnx2(w_state(3)).rank == 3);
    CHECK(ghz_state(2, 3).entries[0] == gq(1));
    CHECK(frobenius_norm(w_state_normalized(4)) == doctest::Approx(1.0));
    CHECK(frobenius_norm(ghz_state_normalized(3, 3)) == doctest::Approx(1.0));
}

TEST_CASE("Alexander-Hirschowitz closed form") {
    CHECK(ah_generic_symmetric_rank(3, 3).value == 4);
    CHECK(ah_generic_symmetric_rank(4, 3).value == 6);
    CHECK(ah_generic_symmetric_rank(4, 3).exceptional);
    for (int d = 3; d <= 9; ++d) CHECK(ah_generic_symmetric_rank(d, 2).value == (d + 1) / 2 + ((d + 1) % 2 != 0));
    CHECK(ah_generic_symmetric_rank(2, 5).quadratic);
    CHECK(ah_generic_symmetric_rank(2, 5).value == 5);
    // the four exceptions: ceil(C/n) + 1
    CHECK(ah_generic_symmetric_rank(4, 4).value == 10); // ceil(35/4) + 1
    CHECK(ah_generic_symmetric_rank(4, 4).exceptional);
    CHECK(ah_generic_symmetric_rank(3, 5).value == 8); // ceil(35/5) + 1
    CHECK(ah_generic_symmetric_rank(3, 5).exceptional);
    CHECK(ah_generic_symmetric_rank(4, 5).value == 15); // ceil(70/5) + 1
    CHECK(ah_generic_symmetric_rank(4, 5).exceptional);
}

TEST_CASE("symmetric Terracini saturation at small cases") {
    // (3,2): full at r = 2 (dimension 4)
    CHECK(symmetric_terracini_rank(3, 2, 2, 11) == 4);
    CHECK(symmetric_terracini_rank(3, 2, 1, 11) == 2);
    // (4,3): deficient at r = 5 (dim 14 < 15), full at 6
    CHECK(symmetric_terracini_rank(4, 3, 5, 11) == 14);
    CHECK(symmetric_terracini_rank(4, 3, 6, 11) == 15);
    // (3,3): full at the AH value 4
    CHECK(symmetric_terracini_rank(3, 3, 4, 11) == 10);
    CHECK(symmetric_terracini_rank(3, 3, 3, 11) < 10);
}

TEST_CASE("known max symmetric ranks") {
    CHECK(known_max_symmetric_rank(3, 3).value == 5);
    CHECK(known_max_symmetric_rank(3, 3).exact);
    CHECK(known_max_symmetric_rank(4, 3).value == 7);
    CHECK(known_max_symmetric_rank(5, 3).value == 10);
    CHECK(known_max_symmetric_rank(7, 2).value == 7);
    auto b34 = known_max_symmetric_rank(3, 4);
    CHECK_FALSE(b34.exact);
    CHECK(b34.value == 2 * 5 - 1);
    CHECK(b34.known_lower == 7);
    // r(W_3) = 3 = known_max_symmetric_rank(3, 2) cross-check
    CHECK(known_max_symmetric_rank(3, 2).value == 3);
    CHECK(rank_mxnx2(w_state(3)).rank == 3);
}

TEST_CASE("Waring decomposition of the W3 Kronecker square") {
    auto dec = waring_w3kron_decomposition();
    CHECK(dec.terms.size() == 7);
    CHECK(evaluate(dec) == kronecker(w_state(3), w_state(3)));
    for (const auto& t : dec.terms) {
        CHECK(t.factors.size() == 3);
        CHECK(t.factors[0] == t.factors[1]);
        CHECK(t.factors[1] == t.factors[2]);
    }
    // every mode-flattening of the target has rank 4
    QTensor x = kronecker(w_state(3), w_state(3));
    for (int m = 1; m <= 3; ++m) CHECK(exact_rank(flatten(x, {m})) == 4);
}

TEST_CASE("border rank demo: residual decays linearly in t") {
    QTensor w3 = w_state(3);
    CTensor w3n = to_numeric(w3);
    double prev = -1;
    for (double t : {0.1, 0.01, 0.001}) {
        CTensor approx = evaluate(border_rank_demo_wd(3, t));
        double res = 0;
        for (int64_t off = 0; off < approx.shape.num_entries(); ++off)
            res += std::norm(approx.entries[off] - w3n.entries[off]);
        res = std::sqrt(res);
        CHECK(res < 2 * std::sqrt(3.0) * t); // ||residual|| ~ sqrt(3) t
        if (prev > 0) {
            double ratio = prev / res;
            CHECK(ratio > 8.0);
            CHECK(ratio < 12.0);
        }
        prev = res;
    }
    // t = 1: exact binomial expansion residual sqrt(3 + 1) = 2
    CTensor a1 = evaluate(border_rank_demo_wd(3, 1.0));
    double r1 = 0;
    for (int64_t off = 0; off < a1.shape.num_entries(); ++off)
        r1 += std::norm(a1.entries[off] - w3n.entries[off]);
    CHECK(std::sqrt(r1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(border_rank_demo_wd(3, 0.0), std::invalid_argument);
    // pencil rank of W3 itself stays 3 regardless
    CHECK(rank_mxnx2(w3).rank == 3);
}

TEST_CASE("8-term decomposition of the W3 tensor square evaluates exactly") {
    auto dec = w3_tensor_square_decomposition();
    CHECK(dec.terms.size() == 8);
    CTensor target = to_numeric(tensor_product(w_state(3), w_state(3)));
    CHECK(trt::max_abs_diff(evaluate(dec), target) < 1e-12);
}
