#pragma once
#include "tensorank/pencil.hpp"
#include "tensorank/tensor.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tensorank {

enum class CertKind {
    FlatteningLower,
    PencilExact,
    DecompositionUpper,
    KruskalExact,
    DeterminantLower,
    TableKnown,
};
std::string to_string(CertKind k);

// Every certificate re-verifies from raw tensor data via verify_certificate.
struct RankCertificate {
    CertKind kind;
    int64_t value = 0;
    bool is_lower = false, is_upper = false;
    bool participates = true; // named-state table values are flagged, not merged
    std::string note;

    // kind-specific payloads
    std::vector<std::vector<int>> mode_splits;  // flattening: the splits tried
    std::vector<int64_t> split_ranks;
    std::optional<Decomposition<Complex>> dec_numeric;
    std::optional<Decomposition<GaussianRational>> dec_exact;
    std::vector<std::array<long, 3>> det_points; // determinant witness sample points
    std::vector<std::vector<int>> kruskal_blocks;
    std::vector<int64_t> kruskal_ranks;
    bool uniqueness = false;
    double guard_bound = 0; // decomposition-upper factor norm guard
};

struct RankReport {
    int64_t lower = 0, upper = 0;
    std::optional<int64_t> exact;
    std::vector<RankCertificate> certificates;
};

// max matrix rank over single-mode flattenings (d <= 4: balanced bipartitions too)
RankCertificate flattening_lower_bound(const QTensor& t);
RankCertificate flattening_lower_bound(const CTensor& t, double tol = 1e-9);

// largest r such that every r-subset is linearly independent; l <= 20
int kruskal_rank(const std::vector<std::vector<GaussianRational>>& vectors);

// Kruskal exactness + uniqueness certificate; d >= 4 groups modes into three
// blocks (block 1 = {mode 1}, remaining split minimizing |N2 - N3|)
std::optional<RankCertificate> kruskal_certificate(const Decomposition<GaussianRational>& dec);

struct AlsOptions {
    double fit_tol = 1e-8;
    int starts = 16;
    int max_iter = 10000;
    double guard_factor = 1e4; // factor norm guard against border-rank escape
    uint64_t seed = 0;
    int r_start = 0; // sweep start; 0 = the flattening lower bound
    std::vector<Decomposition<Complex>> warm_starts; // tried when term count == r
};

struct AlsDiagnostics {
    int r = 0;
    double best_residual = 1e300;
    int guard_trips = 0; // runs fitting within tol but rejected by the guard
    bool accepted = false;
};

// multi-start CP-ALS upper bound; accepts r when the relative residual is
// below fit_tol AND every balanced factor norm stays under
// guard_factor * ||T||_2^{1/d}
std::optional<RankCertificate> als_rank_upper(const CTensor& t, int r_cap, const AlsOptions& opt = {},
                                              std::vector<AlsDiagnostics>* diagnostics = nullptr);

// check a given decomposition against the ALS acceptance rule (fit + guard)
struct GuardCheck {
    double residual = 0;
    double max_balanced_norm = 0;
    double guard_bound = 0;
    bool fits = false, guard_ok = false;
};
GuardCheck check_decomposition(const CTensor& t, const Decomposition<Complex>& dec, double fit_tol,
                               double guard_factor = 1e4);

// det(A4 + a1 A1 + a2 A2 + a3 A3) = 1 for the slices of W3 (x)_K W3,
// verified at random rational points (Schwartz-Zippel); lower bound 7
RankCertificate w3kron2_determinant_certificate(uint64_t seed = 0);
bool verify_determinant_identity(const std::vector<QMat>& slices_a1_to_a4, uint64_t seed, int points,
                                 std::vector<std::array<long, 3>>* used = nullptr);

struct StrassenEvidence {
    std::optional<int64_t> rank_upper;       // proven upper bound on the summand's rank
    std::optional<int64_t> flattening_lower; // max single-mode flattening rank
};
struct StrassenVerdict {
    bool holds = false;
    std::string condition;
};
StrassenVerdict strassen_condition(const Shape& n, const Shape& p,
                                   const StrassenEvidence& en = {}, const StrassenEvidence& ep = {});

struct ReportOptions {
    int r_cap = 0; // 0 = formula caps decide
    uint64_t seed = 0;
    double fit_tol = 1e-8;
    int als_starts = 16;
    int als_iters = 10000;
    std::vector<Decomposition<Complex>> warm_starts; // candidate decompositions for ALS
};

// constructive subadditivity witnesses: the union decomposition of a direct
// sum (factors zero-padded) and the pairwise product decomposition of a
// Kronecker product
Decomposition<Complex> direct_sum_decomposition(const Decomposition<Complex>& a,
                                                const Decomposition<Complex>& b);
Decomposition<Complex> kronecker_decomposition(const Decomposition<Complex>& a,
                                               const Decomposition<Complex>& b);
RankReport rank_report(const QTensor& t, const ReportOptions& opt = {});

// re-verify a certificate from raw tensor data using tensor-core operations
// only; the seed draws fresh points for the determinant identity
bool verify_certificate(const RankCertificate& c, const QTensor& t, uint64_t seed = 0x5eedf00d);

// pair modes (j, j+p) of a 2p-mode tensor into a p-mode Kronecker collapse
QTensor kron_collapse(const QTensor& t);

// explicit 8-term decomposition upper bound used for W3 (x) W3 warm starts
// lives in symmetric.hpp (w3_tensor_square_decomposition)

} // namespace tensorank
