#pragma once
#include "tensorank/gf.hpp"
#include "tensorank/tensor.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tensorank {

// Symmetric tensors as homogeneous polynomials.  Coefficients store f_j in
// f(x) = sum_j c(j) f_j x^j with c(j) = d!/(j_1!...j_n!), so tensor entries
// equal the stored coefficients directly.
using ExponentIndex = std::vector<int>; // size n, entries >= 0, sum d

int64_t multinomial(const ExponentIndex& j);
std::vector<ExponentIndex> exponent_indices(int d, int n); // J(d,n), lexicographic
int64_t binomial(int64_t n, int64_t k);

template <class S>
struct HomogeneousPolynomial {
    int d = 0, n = 0;
    std::map<ExponentIndex, S> coeffs; // absent keys are zero

    void set(const ExponentIndex& j, S v) {
        if (static_cast<int>(j.size()) != n) throw std::invalid_argument("HomPoly: index arity");
        int sum = 0;
        for (int e : j) {
            if (e < 0) throw std::invalid_argument("HomPoly: negative exponent");
            sum += e;
        }
        if (sum != d) throw std::invalid_argument("HomPoly: exponent degree mismatch");
        if (scalar_is_zero(v)) coeffs.erase(j);
        else coeffs[j] = std::move(v);
    }
};

// exponent vector of a multi-index: j_l = #occurrences of l in (i_1..i_d)
ExponentIndex exponent_of(const std::vector<int>& idx0, int n);

template <class S>
DenseTensor<S> poly_to_tensor(const HomogeneousPolynomial<S>& f);

// inverse map; rejects non-symmetric input (exact equality for the exact
// backend, 1e-10 relative for the numeric one)
HomogeneousPolynomial<GaussianRational> tensor_to_poly(const QTensor& t);
HomogeneousPolynomial<Complex> tensor_to_poly(const CTensor& t, double tol = 1e-10);

bool is_symmetric(const QTensor& t);
bool is_symmetric(const CTensor& t, double tol = 1e-10);

// named states, unnormalized: |W_d> = sum of e_2 in one slot, e_1 elsewhere;
// GHZ(n,d) = sum_i e_i^{(x)d}
QTensor w_state(int d);
QTensor ghz_state(int n, int d);
CTensor w_state_normalized(int d);
CTensor ghz_state_normalized(int n, int d);

struct AhRank {
    int64_t value = 0;
    bool exceptional = false;  // one of the four Alexander-Hirschowitz exceptions
    bool quadratic = false;    // d = 2 special case (value n)
};
AhRank ah_generic_symmetric_rank(int d, int n);

// rank over GF(p) of the Veronese tangent-space matrix: rows J(d,n),
// columns (l,i) with entries j_l * x_i^{j - e_l}
int64_t symmetric_terracini_rank(int d, int n, int r, uint64_t seed, uint64_t prime = kPrime61);

struct MaxSymRank {
    int64_t value = 0;
    bool exact = false;                  // table value vs 2 r_gen - 1 bound
    std::optional<int64_t> known_lower;  // e.g. r_max(3,4) >= 7
};
MaxSymRank known_max_symmetric_rank(int d, int n);

// the explicit 7-term symmetric decomposition of W3 (x)_K W3 from the two
// cubic Waring identities; exact rational weights; evaluates exactly
Decomposition<GaussianRational> waring_w3kron_decomposition();

// (1/t)((e1 + t e2)^{(x)d} - e1^{(x)d}); residual against W_d is O(t)
Decomposition<Complex> border_rank_demo_wd(int d, double t);

// explicit 8-term decomposition of W3 (x) W3 (6 modes); evaluates exactly
// up to roundoff (weights involve sqrt(2))
Decomposition<Complex> w3_tensor_square_decomposition();

} // namespace tensorank
