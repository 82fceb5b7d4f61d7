#pragma once
#include "tensorank/poly.hpp"
#include "tensorank/tensor.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tensorank {

// Matrix pencil (A,B) = frontal slices of an m x n x 2 tensor, exact entries.
// Pencil structure is discontinuous in the entries, so only the exact
// backend is accepted here.
struct Pencil {
    QMat A, B;
    int m() const { return A.rows; }
    int n() const { return A.cols; }
};

struct KroneckerStructure {
    std::vector<int> column_minimal_indices; // sorted ascending, multiset
    std::vector<int> row_minimal_indices;
    int regular_core_dim = 0;
    std::vector<Poly> invariant_polynomials; // p_1, p_2, ... with p_{i+1} | p_i
    int normal_rank = 0;
};

enum class PencilCertificate { Regular, Singular, Degenerate };
std::string to_string(PencilCertificate c);

struct PencilRankResult {
    int rank = 0;
    KroneckerStructure structure;
    PencilCertificate certificate = PencilCertificate::Regular;
    std::vector<int> mode_permutation; // 1-based modes of the input mapped to (row, col, pencil)
};

enum class Rank222Label { Zero, Product, DependentSliceRank2, SingularSpan, GhzClass, WClass };
std::string to_string(Rank222Label l);

struct Rank222Class {
    int rank = 0;
    Rank222Label orbit_label = Rank222Label::Zero;
};

// frontal slices: A = slice k=1, B = slice k=2 of the (permuted) tensor
Pencil pencil_of(const QTensor& t);

// deterministic witness search over (a,b) in (1,0),(1,1),...,(1,m),(0,1);
// det(aA+bB) is a binary form of degree m, so m+1 distinct projective points
// decide identical vanishing
std::optional<std::pair<Rational, Rational>> find_regular_witness(const Pencil& p);

// invariant polynomials of the rational canonical form of X^{-1}Y where
// X = aA+bB is invertible: Smith form of tX - Y, nontrivial factors,
// returned in the divisibility order p_{i+1} | p_i
std::vector<Poly> invariant_polynomials(const Pencil& p, const std::pair<Rational, Rational>& witness);

// k in the rank formula r = m + k: factors with a repeated root
int count_multiple_root_factors(const std::vector<Poly>& polys);

// full Kronecker structure from kernel-dimension sequences (minimal indices)
// plus the Smith form of the Moebius-substituted pencil (core invariants)
KroneckerStructure kronecker_structure(const Pencil& p);

// exact tensor rank of an m x n x 2 tensor (any mode of size 2 accepted)
PencilRankResult rank_mxnx2(const QTensor& t);

Rank222Class classify_222(const QTensor& t);

// closed-form maximal rank of m x n x 2 tensors
int max_rank_mn2(int m, int n);

} // namespace tensorank
