#include "tensorank/hamming.hpp"

#include "tensorank/genrank.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace tensorank;

namespace {
VertexSet vs(const Shape& s, std::vector<HammingPoint> pts) { return {s, std::move(pts)}; }
} // namespace

TEST_CASE("verify_dominating: the explicit 6-point set for (3,3,3)") {
    Shape s({3, 3, 3});
    VertexSet a = vs(s, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 1, 2}, {2, 2, 3}, {3, 3, 1}});
    CHECK(verify_dominating(s, a));
    // dropping the last point breaks the cover
    a.points.pop_back();
    CHECK_FALSE(verify_dominating(s, a));
    // the full vertex set trivially dominates
    VertexSet full{s, {}};
    for (int x = 1; x <= 3; ++x)
        for (int y = 1; y <= 3; ++y)
            for (int z = 1; z <= 3; ++z) full.points.push_back({x, y, z});
    CHECK(verify_dominating(s, full));
    CHECK_THROWS_AS(verify_dominating(s, vs(s, {{0, 1, 1}})), std::invalid_argument);
}

TEST_CASE("verify_3separated: B for (3,3,3) and a distance-2 violation") {
    Shape s({3, 3, 3});
    CHECK(verify_3separated(s, vs(s, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}})));
    CHECK_FALSE(verify_3separated(s, vs(s, {{1, 1, 1}, {2, 2, 2}, {3, 3, 3}, {1, 2, 3}})));
    CHECK(verify_3separated(s, vs(s, {{2, 3, 1}})));
}

TEST_CASE("greedy_dominating: verifies, respects the sandwich bound") {
    Shape s2({2, 2, 2});
    VertexSet g2 = greedy_dominating(s2);
    CHECK(verify_dominating(s2, g2));
    CHECK(g2.points.size() >= 2); // ceil(8/4)
    CHECK(verify_dominating(s2, vs(s2, {{1, 1, 1}, {2, 2, 2}}))); // a size-2 set exists

    Shape s3({3, 3, 3});
    VertexSet g3 = greedy_dominating(s3);
    CHECK(verify_dominating(s3, g3));
    CHECK(g3.points.size() >= 4);
    CHECK(g3.points.size() <= 9);

    Shape s1({7});
    CHECK(greedy_dominating(s1).points.size() == 1); // one ball covers a clique
}

TEST_CASE("greedy_3separated: packing sizes") {
    CHECK(greedy_3separated(Shape({3, 3, 3})).points.size() == 3);
    CHECK(greedy_3separated(Shape({2, 2, 2})).points.size() <= 2);
    // lexicode for (2^7, distance 3) is the Hamming code with 16 words
    VertexSet h = greedy_3separated(Shape({2, 2, 2, 2, 2, 2, 2}));
    CHECK(h.points.size() == 16);
    CHECK(verify_3separated(h.shape, h));
}

TEST_CASE("perfect_code_rank") {
    CHECK(perfect_code_rank(2, 7) == 16);
    CHECK(!perfect_code_rank(2, 5));
    CHECK(perfect_code_rank(3, 13) == 59049); // 3^10
    CHECK(!perfect_code_rank(2, 3));          // a = 1 excluded
    CHECK(!perfect_code_rank(6, 7));          // not a prime power
    CHECK(perfect_code_rank(4, 21) == 68719476736ll); // 4^18, q^l = 2^2 recognized
}

TEST_CASE("perfect_code_set: explicit Hamming code over GF(2) and GF(3)") {
    VertexSet h = perfect_code_set(2, 2); // [7,4] binary Hamming code
    CHECK(h.points.size() == 16);
    CHECK(verify_3separated(h.shape, h));
    CHECK(verify_dominating(h.shape, h)); // perfect: balls tile exactly
    CHECK(static_cast<int64_t>(h.points.size()) == *perfect_code_rank(2, 7));

    VertexSet h3 = perfect_code_set(3, 2); // [13,10] ternary: too big to verify pairwise here
    CHECK(h3.points.size() == 59049);
    CHECK_THROWS_AS(perfect_code_set(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(perfect_code_set(4, 2), std::invalid_argument); // prime power, not prime
}

TEST_CASE("fractional bound") {
    CHECK(fractional_bound(Shape({3, 3, 3})) == Rational(27, 7));
    CHECK(fractional_bound(Shape({2, 2, 2})) == Rational(2));
    CHECK(fractional_bound(Shape({2, 2, 2, 2})) == Rational(16, 5));
}

TEST_CASE("packing <= N/M <= covering for random shapes; greedy always verifies") {
    trt::SplitMix64 g(606);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<int> dims(2 + g.below(3));
        for (auto& d : dims) d = 2 + static_cast<int>(g.below(3));
        Shape s(dims);
        VertexSet dom = greedy_dominating(s);
        VertexSet sep = greedy_3separated(s);
        CHECK(verify_dominating(s, dom));
        CHECK(verify_3separated(s, sep));
        Rational frac = fractional_bound(s);
        CHECK(Rational(static_cast<long>(sep.points.size())) <= frac);
        CHECK(frac <= Rational(static_cast<long>(dom.points.size())));
    }
}

TEST_CASE("perfect code value equals r0 and N/M is integral") {
    for (auto [n, d] : std::vector<std::pair<int, int>>{{2, 7}, {3, 13}, {2, 15}}) {
        auto v = perfect_code_rank(n, d);
        REQUIRE(v);
        Shape s(std::vector<int>(d, n));
        CHECK(fractional_bound(s).get_den() == 1);
        CHECK(*v == r0_lower_bound(s));
    }
}

TEST_CASE("generic rank bounded by the greedy dominating size") {
    GenrankOptions opt;
    for (Shape s : {Shape({2, 2, 2}), Shape({3, 3, 3}), Shape({2, 2, 2, 2}), Shape({2, 3, 4})}) {
        CHECK(generic_rank(s, opt).r_gen <=
              static_cast<int64_t>(greedy_dominating(s).points.size()));
    }
}
