#pragma once
#include "tensorank/tensor.hpp"

#include <optional>
#include <vector>

namespace tensorank {

// Spectral norm (geometric measure), nuclear norm with primal decompositions
// and dual certificates, and the eta / Schmidt entanglement measures.
// Everything here is numeric (double complex) and NP-hard in general: values
// are certified lower bounds (spectral) or primal/dual brackets (nuclear),
// accepted as the norm under the documented consensus conditions.

struct SpectralOptions {
    int starts = 64;
    double tol = 1e-12;
    int max_iter = 2000;
    uint64_t seed = 0;
    int threads = 0; // 0 = read TENSORANK_THREADS (default 1)
};

struct SpectralResult {
    double value = 0;                    // certified lower bound on ||T||_inf
    Decomposition<Complex> maximizer;    // one term, unit factors, weight 1
    int starts_converged = 0;            // starts agreeing with the best within tol
    int iterations = 0;                  // sweeps used by the best start
};

SpectralResult spectral_norm(const CTensor& t, const SpectralOptions& opt = {});

// (theta,phi) grid sweep of sigma_max(u1 T1 + u2 T2) for shape (2,m,n),
// with local refinement; cross-validates the power iteration
SpectralResult spectral_norm_2slice(const CTensor& t, int grid = 100, int refine_rounds = 4);

// Banach specialization: symmetric power iteration, maximizer x^{(x)d}
SpectralResult symmetric_spectral_norm(const CTensor& s, const SpectralOptions& opt = {});

struct NuclearOptions {
    int r_max_terms = 8;
    double tol = 1e-6;      // dual gap acceptance
    double fit_tol = 1e-8;  // relative reconstruction tolerance
    int starts = 32;
    int iters_per_stage = 250;
    uint64_t seed = 0;
    int threads = 0;
    SpectralOptions spectral; // for the dual witness norm
};

struct NuclearResult {
    double primal_value = 0;                 // sum of weights, unit factors
    Decomposition<Complex> decomposition;    // positive weights, unit factors
    double dual_value = 0;                   // max Re<T,W>/||W||_inf over witnesses
    CTensor dual_witness;
    double gap = 0;
    double fit_residual = 0;                 // relative
    bool verified = false;                   // gap <= tol and fit ok
};

NuclearResult nuclear_norm(const CTensor& t, const NuclearOptions& opt = {});

// max over single-mode flattenings of the matrix trace norm
double nuclear_lower_bound_flatten(const CTensor& t);

struct NuclearRankEstimate {
    int rank = 0;
    bool heuristic = true; // upper-bound evidence only
};
NuclearRankEstimate nuclear_rank_estimate(const NuclearResult& r);

// the three-term zeta = e^{2 pi i/9} decomposition of normalized W3
Decomposition<Complex> w3_zeta_decomposition();
struct W3NuclearCheck {
    bool ok = false;
    double energy = 0;
    double reconstruction_error = 0;
};
W3NuclearCheck verify_w3_nuclear_decomposition();

struct EntanglementMeasures {
    double eta = 0;
    double eta_upper = 0;
    std::optional<double> schmidt_measure;
};
EntanglementMeasures entanglement_measures(const CTensor& t, std::optional<int64_t> rank_hint = {},
                                           const SpectralOptions& opt = {});

// decomposition energy sum |w_i| prod_j ||x_{i,j}||
double decomposition_energy(const Decomposition<Complex>& d);

int env_thread_cap(); // TENSORANK_THREADS, default 1

} // namespace tensorank
