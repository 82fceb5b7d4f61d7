#pragma once
#include "tensorank/gf.hpp"
#include "tensorank/scalar.hpp"
#include "tensorank/shape.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tensorank {

struct TerraciniProbe {
    Shape shape;
    int r = 1;
    uint64_t field_prime = kPrime61;
    int trials = 3;
    uint64_t seed = 0;
};

struct GenericRankResult {
    int64_t r0 = 0;
    int64_t r_gen = 0;
    int64_t jacobian_rows = 0, jacobian_cols = 0;
    std::vector<std::pair<int64_t, int64_t>> d_sequence; // (r, d(n,r)) from r0 upward
};

struct GenrankOptions {
    int trials = 3;
    uint64_t seed = 0;
    uint64_t prime = kPrime61;
};

// ceil(N/M) after dropping singleton modes
int64_t r0_lower_bound(const Shape& shape);

// N(n) x (r * sum n_j) Jacobian of the r-term rank-one sum map at the given
// sample points (one vector per mode per term), over GF(p).  Column (i,k,l)
// is the rank-one tensor with factor k of term i replaced by basis vector l.
GfMat terracini_jacobian(const Shape& shape, int r,
                         const std::vector<std::vector<std::vector<uint64_t>>>& points, uint64_t p);

// random sample points for a probe, entries uniform in [0, p)
std::vector<std::vector<std::vector<uint64_t>>> terracini_points(const Shape& shape, int r,
                                                                 uint64_t p, uint64_t seed);

// d(n,r): achieved Jacobian rank at random points (best of trials);
// skips the elimination when r*M(n) < N(n), where deficiency is certain
int64_t terracini_dimension(const Shape& shape, int r, const GenrankOptions& opt);

// same Jacobian over doubles (points uniform in [0.5,1.5)), SVD rank at tol
int64_t terracini_dimension_numeric(const Shape& shape, int r, uint64_t seed, double tol = 1e-8);

GenericRankResult generic_rank(const Shape& shape, const GenrankOptions& opt = {});

// closed-form r_gen = n_d in the unbalanced regime (dims sorted ascending),
// including n_d >= prod(others) where r_gen = r_max = prod(others)
std::optional<int64_t> threshold_generic_rank(const Shape& shape);

struct QunitFormulas {
    Rational theta;       // n^d / (d(n-1)+1)
    int64_t floor_theta = 0;
    int delta = 0;        // floor(theta) mod n
    int64_t value = 0;    // exact value or the AOP upper bound
    bool exact = false;
    std::string method;
};
QunitFormulas qunit_formulas(int64_t n, int64_t d);

struct MaxRankBounds {
    int64_t value = 0;
    std::vector<std::pair<std::string, int64_t>> bounds; // label -> bound
};
MaxRankBounds max_rank_upper_bounds(int64_t m, int64_t n, int64_t p);

// embedded known values
struct Table1Entry {
    int d, n;
    int64_t value;
    std::string provenance; // reference tag or "computed"
};
struct Table2Entry {
    int d, n;
    int64_t r_gen, r_max, r_u;
    bool r_max_exact;
};
struct KnownTables {
    std::vector<Table1Entry> table1;
    std::vector<Table2Entry> table2;
    // r_max(3,3,p) for p=1..9; p=5 is the two-element set {6,7}
    std::vector<std::vector<int>> max_rank_33p;
};
const KnownTables& known_tables();
std::optional<int64_t> table1_lookup(int d, int n);
int64_t r_u_bound(int64_t n, int64_t d); // n^d - d n (n-1) / 2

} // namespace tensorank
