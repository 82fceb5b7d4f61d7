#pragma once
#include "tensorank/scalar.hpp"
#include "tensorank/shape.hpp"

#include <optional>
#include <vector>

namespace tensorank {

// Hamming graph machinery on [n_1] x ... x [n_d]: dominating sets bound
// r_gen from above, 3-separated sets (packings) from below via N/M.
// Points carry 1-based coordinates.
using HammingPoint = std::vector<int>;

struct VertexSet {
    Shape shape;
    std::vector<HammingPoint> points; // sorted lexicographically, no duplicates
};

bool verify_dominating(const Shape& shape, const VertexSet& s);
bool verify_3separated(const Shape& shape, const VertexSet& s);

// max-degree greedy on the shrinking induced graph; ties break to the
// lexicographically smallest vertex
VertexSet greedy_dominating(const Shape& shape);

// lexicographic greedy packing with pairwise distance >= 3
VertexSet greedy_3separated(const Shape& shape);

// r_gen(n) = n^{d-a-1} when n = q^l (q prime) and d = (n^{a+1}-1)/(n-1), a >= 2
std::optional<int64_t> perfect_code_rank(int64_t n, int64_t d);

// explicit Hamming code over GF(q) (q prime, a >= 2): a 1-perfect code in
// [q]^d with q^{d-a-1} words; construction guarded to <= 2^20 codewords
VertexSet perfect_code_set(int64_t q, int64_t a);

// regular-graph LP relaxation value N(n)/M(n)
Rational fractional_bound(const Shape& shape);

int hamming_distance(const HammingPoint& a, const HammingPoint& b);

} // namespace tensorank
