#include "tensorank/rankbounds.hpp"

#include "tensorank/genrank.hpp"
#include "tensorank/rng.hpp"
#include "tensorank/symmetric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tensorank {

std::string to_string(CertKind k) {
    switch (k) {
        case CertKind::FlatteningLower: return "flattening-lower";
        case CertKind::PencilExact: return "pencil-exact";
        case CertKind::DecompositionUpper: return "decomposition-upper";
        case CertKind::KruskalExact: return "kruskal-exact";
        case CertKind::DeterminantLower: return "determinant-lower";
        default: return "table-known";
    }
}

namespace {

std::vector<std::vector<int>> candidate_splits(const Shape& s) {
    const int d = s.order();
    std::vector<std::vector<int>> splits;
    for (int m = 1; m <= d; ++m) splits.push_back({m});
    if (d == 4) {
        // balanced bipartitions, mode 1 kept on the left to avoid duplicates
        for (int other = 2; other <= 4; ++other) splits.push_back({1, other});
    }
    return splits;
}

template <class T, class RankFn>
RankCertificate flattening_impl(const T& t, RankFn rank_of) {
    RankCertificate c;
    c.kind = CertKind::FlatteningLower;
    c.is_lower = true;
    for (const auto& split : candidate_splits(t.shape)) {
        if (static_cast<int>(split.size()) >= t.shape.order()) continue;
        int64_t r = rank_of(flatten(t, split));
        c.mode_splits.push_back(split);
        c.split_ranks.push_back(r);
        c.value = std::max(c.value, r);
    }
    return c;
}

} // namespace

RankCertificate flattening_lower_bound(const QTensor& t) {
    return flattening_impl(t, [](const QMat& m) { return static_cast<int64_t>(exact_rank(m)); });
}
RankCertificate flattening_lower_bound(const CTensor& t, double tol) {
    return flattening_impl(t, [tol](const Mat<Complex>& m) {
        return static_cast<int64_t>(numeric_rank(m, tol));
    });
}

int kruskal_rank(const std::vector<std::vector<GaussianRational>>& vectors) {
    const int l = static_cast<int>(vectors.size());
    if (l == 0) throw std::invalid_argument("kruskal_rank: empty vector list");
    if (l > 20) throw std::invalid_argument("kruskal_rank: more than 20 vectors");
    const int dim = static_cast<int>(vectors[0].size());
    for (const auto& v : vectors) {
        bool all0 = true;
        for (const auto& x : v)
            if (!x.is_zero()) { all0 = false; break; }
        if (all0) throw std::invalid_argument("kruskal_rank: zero vector present");
    }
    const int cap = std::min(l, dim);
    // smallest dependent subset size s gives r_K = s - 1
    for (int s = 2; s <= cap; ++s) {
        std::vector<int> pick(s);
        for (int i = 0; i < s; ++i) pick[i] = i;
        for (;;) {
            QMat m(dim, s);
            for (int j = 0; j < s; ++j)
                for (int i = 0; i < dim; ++i) m(i, j) = vectors[pick[j]][i];
            if (exact_rank(m) < s) return s - 1;
            int k = s - 1;
            while (k >= 0 && pick[k] == l - s + k) --k;
            if (k < 0) break;
            ++pick[k];
            for (int i = k + 1; i < s; ++i) pick[i] = pick[i - 1] + 1;
        }
    }
    return cap;
}

namespace {

// vectorized outer product of a block of factors (modes ascending)
std::vector<GaussianRational> block_vector(const RankOneTerm<GaussianRational>& term,
                                           const std::vector<int>& modes0) {
    std::vector<GaussianRational> v = {GaussianRational(1)};
    for (int m : modes0) {
        std::vector<GaussianRational> nv;
        nv.reserve(v.size() * term.factors[m].size());
        for (const auto& a : v)
            for (const auto& b : term.factors[m]) nv.push_back(a * b);
        v = std::move(nv);
    }
    return v;
}

} // namespace

std::optional<RankCertificate> kruskal_certificate(const Decomposition<GaussianRational>& dec) {
    const int d = dec.shape.order();
    if (d < 3) throw std::invalid_argument("kruskal_certificate: d >= 3 required");
    const int r = static_cast<int>(dec.terms.size());
    for (const auto& t : dec.terms)
        if (t.is_zero_term()) throw std::invalid_argument("kruskal_certificate: zero term");

    // three mode blocks; for d = 3 the blocks are the modes themselves
    std::vector<std::vector<int>> blocks;
    if (d == 3) {
        blocks = {{0}, {1}, {2}};
    } else {
        blocks.resize(3);
        blocks[0] = {0};
        int rest = d - 1;
        int64_t best_diff = -1;
        int best_mask = -1;
        for (int mask = 1; mask < (1 << rest) - 1; ++mask) {
            int64_t n2 = 1, n3 = 1;
            for (int b = 0; b < rest; ++b) {
                int64_t dim = dec.shape.dims[b + 1];
                ((mask >> b) & 1) ? n2 *= dim : n3 *= dim;
            }
            if (n2 > n3) continue; // N2 <= N3 orientation
            if (best_diff < 0 || n3 - n2 < best_diff) { best_diff = n3 - n2; best_mask = mask; }
        }
        for (int b = 0; b < rest; ++b)
            blocks[((best_mask >> b) & 1) ? 1 : 2].push_back(b + 1);
    }

    std::vector<int64_t> rk(3);
    for (int k = 0; k < 3; ++k) {
        std::vector<std::vector<GaussianRational>> vecs;
        for (const auto& term : dec.terms) {
            auto v = block_vector(term, blocks[k]);
            if (k == 0) // absorb the weight so terms are plain rank-one tensors
                for (auto& x : v) x *= term.weight;
            vecs.push_back(std::move(v));
        }
        rk[k] = kruskal_rank(vecs);
    }
    if (rk[0] + rk[1] + rk[2] < 2 * r + 2) return std::nullopt;

    RankCertificate c;
    c.kind = CertKind::KruskalExact;
    c.value = r;
    c.is_lower = c.is_upper = true;
    c.uniqueness = true;
    c.dec_exact = dec;
    for (const auto& b : blocks) {
        std::vector<int> ones;
        for (int m : b) ones.push_back(m + 1);
        c.kruskal_blocks.push_back(ones);
    }
    c.kruskal_ranks = {rk[0], rk[1], rk[2]};
    c.note = "sum of Kruskal ranks >= 2r+2; decomposition unique";
    return c;
}

namespace {

using FactorMats = std::vector<Eigen::MatrixXcd>; // one n_j x r matrix per mode

CTensor model_from_factors(const Shape& shape, const FactorMats& X) {
    CTensor out(shape);
    const int d = shape.order();
    const int r = X.empty() ? 0 : static_cast<int>(X[0].cols());
    std::vector<int> idx;
    for (int64_t off = 0; off < shape.num_entries(); ++off) {
        unravel(off, shape, idx);
        Complex acc = 0;
        for (int i = 0; i < r; ++i) {
            Complex v = 1.0;
            for (int j = 0; j < d; ++j) v *= X[j](idx[j], i);
            acc += v;
        }
        out.entries[off] = acc;
    }
    return out;
}

Decomposition<Complex> decomposition_from_factors(const Shape& shape, const FactorMats& X) {
    Decomposition<Complex> dec;
    dec.shape = shape;
    const int d = shape.order();
    const int r = X.empty() ? 0 : static_cast<int>(X[0].cols());
    for (int i = 0; i < r; ++i) {
        RankOneTerm<Complex> t;
        t.weight = 1.0;
        for (int j = 0; j < d; ++j) {
            std::vector<Complex> f(shape.dims[j]);
            for (int a = 0; a < shape.dims[j]; ++a) f[a] = X[j](a, i);
            t.factors.push_back(std::move(f));
        }
        dec.terms.push_back(std::move(t));
    }
    return dec;
}

// balance each term so every factor carries the same norm; returns max norm
double rebalance(FactorMats& X) {
    const int d = static_cast<int>(X.size());
    const int r = static_cast<int>(X[0].cols());
    double worst = 0;
    for (int i = 0; i < r; ++i) {
        double logp = 0;
        std::vector<double> norms(d);
        for (int j = 0; j < d; ++j) {
            norms[j] = X[j].col(i).norm();
            if (norms[j] == 0) { logp = -1e300; break; }
            logp += std::log(norms[j]);
        }
        if (logp == -1e300) continue;
        double target = std::exp(logp / d);
        for (int j = 0; j < d; ++j) X[j].col(i) *= target / norms[j];
        worst = std::max(worst, target);
    }
    return worst;
}

struct AlsRun {
    double residual = 1e300;
    double max_balanced_norm = 0;
    FactorMats X;
};

double relative_residual(const CTensor& t, const FactorMats& X) {
    CTensor model = model_from_factors(t.shape, X);
    double res = 0;
    const double tnorm = frobenius_norm(t);
    for (int64_t off = 0; off < t.shape.num_entries(); ++off)
        res += std::norm(model.entries[off] - t.entries[off]);
    return std::sqrt(res) / (tnorm > 0 ? tnorm : 1.0);
}

AlsRun als_run(const CTensor& t, int r, FactorMats X, int max_iter, double fit_tol) {
    const int d = t.shape.order();
    const int64_t N = t.shape.num_entries();
    std::vector<int> idx;
    // keep the best state seen, including the initial point (warm starts may
    // already fit but be numerically hostile to iterate from)
    AlsRun best;
    best.residual = relative_residual(t, X);
    best.X = X;
    FactorMats Xprev = X;
    double window_best = best.residual;
    int since_improve = 0;
    int next_checkpoint = 1500;
    double checkpoint_norm = 0, first_norm = 0;
    {
        double logp_max = 0;
        for (int i = 0; i < (X.empty() ? 0 : static_cast<int>(X[0].cols())); ++i) {
            double logp = 0;
            bool zero = false;
            for (const auto& xj : X) {
                double nj = xj.col(i).norm();
                if (nj == 0) { zero = true; break; }
                logp += std::log(nj);
            }
            if (!zero) logp_max = std::max(logp_max, std::exp(logp / static_cast<double>(X.size())));
        }
        checkpoint_norm = first_norm = std::max(logp_max, 1e-30);
    }
    for (int it = 0; it < max_iter; ++it) {
        for (int j = 0; j < d; ++j) {
            // normal equations X_j (hadamard gram) = W
            Eigen::MatrixXcd G = Eigen::MatrixXcd::Ones(r, r);
            for (int l = 0; l < d; ++l) {
                if (l == j) continue;
                G = G.cwiseProduct((X[l].adjoint() * X[l]).conjugate());
            }
            Eigen::MatrixXcd W = Eigen::MatrixXcd::Zero(t.shape.dims[j], r);
            for (int64_t off = 0; off < N; ++off) {
                const Complex& tv = t.entries[off];
                if (tv == Complex(0.0)) continue;
                unravel(off, t.shape, idx);
                for (int i = 0; i < r; ++i) {
                    Complex v = tv;
                    for (int l = 0; l < d; ++l)
                        if (l != j) v *= std::conj(X[l](idx[l], i));
                    W(idx[j], i) += v;
                }
            }
            G += 1e-12 * G.norm() * Eigen::MatrixXcd::Identity(r, r);
            X[j] = G.transpose().colPivHouseholderQr().solve(W.transpose()).transpose();
        }
        double res = relative_residual(t, X);
        // enhanced line search: overstep along the sweep direction; this is
        // what cuts through the long m x n x 2 swamps
        if (it > 0) {
            for (double s : {2.0, 4.0, 8.0, 16.0}) {
                FactorMats Xc(d);
                for (int j = 0; j < d; ++j) Xc[j] = Xprev[j] + s * (X[j] - Xprev[j]);
                double rc = relative_residual(t, Xc);
                if (rc < res) {
                    res = rc;
                    X = std::move(Xc);
                }
            }
        }
        Xprev = X;
        if (res < best.residual) {
            best.residual = res;
            best.X = X;
        }
        if (res < fit_tol * 0.01) break;
        // swamps stagnate for long stretches; only bail after a dead window
        if (res < window_best * 0.999999) {
            window_best = res;
            since_improve = 0;
        } else if (++since_improve > 300) {
            break;
        }
        // border-chase checkpoint: residual stuck above tolerance while term
        // norms keep growing cannot end in an accepted fit (the guard would
        // reject it anyway), so stop burning iterations on it
        if (it == next_checkpoint) {
            double norm_now = 0;
            for (int i = 0; i < r; ++i) {
                double logp = 0;
                bool zero = false;
                for (int j = 0; j < d; ++j) {
                    double nj = X[j].col(i).norm();
                    if (nj == 0) { zero = true; break; }
                    logp += std::log(nj);
                }
                if (!zero) norm_now = std::max(norm_now, std::exp(logp / d));
            }
            if (res > fit_tol && norm_now > 3 * checkpoint_norm && norm_now > 10 * first_norm) break;
            checkpoint_norm = std::max(checkpoint_norm, norm_now);
            next_checkpoint += 1500;
        }
    }
    best.max_balanced_norm = rebalance(best.X);
    return best;
}

FactorMats random_factors(const Shape& shape, int r, uint64_t seed, double scale) {
    SplitMix64 g(seed);
    FactorMats X(shape.order());
    for (int j = 0; j < shape.order(); ++j) {
        X[j].resize(shape.dims[j], r);
        for (int a = 0; a < shape.dims[j]; ++a)
            for (int i = 0; i < r; ++i)
                X[j](a, i) = scale * Complex(2 * g.real() - 1, 2 * g.real() - 1);
    }
    return X;
}

// Leurgans / generalized-eigendecomposition starts for 3-mode tensors with
// two equal mode sizes m and r == m: slice combinations U = sum a_k T_k,
// V = sum b_k T_k satisfy U V^{-1} = A D A^{-1} and (V^{-1} U)^T = B D' B^{-1},
// so eigenvectors recover the factor matrices up to scaling
std::vector<FactorMats> leurgans_starts(const CTensor& t, int r, uint64_t seed) {
    std::vector<FactorMats> out;
    if (t.shape.order() != 3) return out;
    // find a pair of equal-size modes of size r; the remaining mode slices
    int eq1 = -1, eq2 = -1, sl = -1;
    for (int a = 0; a < 3 && eq1 < 0; ++a)
        for (int b = a + 1; b < 3; ++b)
            if (t.shape.dims[a] == r && t.shape.dims[b] == r) {
                eq1 = a;
                eq2 = b;
                sl = 3 - a - b;
                break;
            }
    if (eq1 < 0 || t.shape.dims[sl] < 2) return out;
    const int p = t.shape.dims[sl];
    SplitMix64 g(seed);
    std::vector<int> idx(3);
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<Complex> alpha(p), beta(p);
        for (int k = 0; k < p; ++k) {
            alpha[k] = Complex(2 * g.real() - 1, 2 * g.real() - 1);
            beta[k] = Complex(2 * g.real() - 1, 2 * g.real() - 1);
        }
        Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(r, r), V = Eigen::MatrixXcd::Zero(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                for (int k = 0; k < p; ++k) {
                    idx[eq1] = i;
                    idx[eq2] = j;
                    idx[sl] = k;
                    Complex v = t.at(idx);
                    U(i, j) += alpha[k] * v;
                    V(i, j) += beta[k] * v;
                }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(V);
        if (std::abs(lu.determinant()) < 1e-12) continue;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> esA(U * lu.inverse());
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> esB((lu.inverse() * U).transpose());
        if (esA.info() != Eigen::Success || esB.info() != Eigen::Success) continue;
        FactorMats X(3);
        X[eq1] = esA.eigenvectors();
        X[eq2] = esB.eigenvectors();
        X[sl] = Eigen::MatrixXcd::Zero(p, r);
        // align the two eigenbases term by term (eigenvalues of the two
        // problems coincide); match by eigenvalue proximity
        Eigen::VectorXcd evA = esA.eigenvalues(), evB = esB.eigenvalues();
        Eigen::MatrixXcd B2 = X[eq2];
        std::vector<bool> used(r, false);
        for (int i = 0; i < r; ++i) {
            int bestj = -1;
            double bestd = 1e300;
            for (int j = 0; j < r; ++j) {
                if (used[j]) continue;
                double dd = std::abs(evA(i) - evB(j));
                if (dd < bestd) {
                    bestd = dd;
                    bestj = j;
                }
            }
            used[bestj] = true;
            X[eq2].col(i) = B2.col(bestj);
        }
        // slice weights: S_k = A diag(c_k) B^T, so c_k = diag(A^{-1} S_k B^{-T})
        Eigen::PartialPivLU<Eigen::MatrixXcd> luA(X[eq1]);
        Eigen::PartialPivLU<Eigen::MatrixXcd> luB(X[eq2]);
        if (std::abs(luA.determinant()) < 1e-14 || std::abs(luB.determinant()) < 1e-14) continue;
        for (int k = 0; k < p; ++k) {
            Eigen::MatrixXcd S(r, r);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    idx[eq1] = i;
                    idx[eq2] = j;
                    idx[sl] = k;
                    S(i, j) = t.at(idx);
                }
            // B^{-1} S^T gives (S B^{-T})^T; undo the transpose, then A^{-1}
            Eigen::MatrixXcd D = luA.solve(luB.solve(S.transpose()).transpose().eval());
            for (int i = 0; i < r; ++i) X[sl](k, i) = D(i, i);
        }
        out.push_back(std::move(X));
    }
    return out;
}

// dominant mode subspaces from the unfoldings; random mixes inside them make
// far better-conditioned starts than raw noise
std::vector<Eigen::MatrixXcd> hosvd_bases(const CTensor& t) {
    std::vector<Eigen::MatrixXcd> bases(t.shape.order());
    for (int j = 0; j < t.shape.order(); ++j) {
        Mat<Complex> m = flatten(t, {j + 1});
        Eigen::MatrixXcd e(m.rows, m.cols);
        for (int a = 0; a < m.rows; ++a)
            for (int b = 0; b < m.cols; ++b) e(a, b) = m(a, b);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(e, Eigen::ComputeThinU);
        bases[j] = svd.matrixU();
    }
    return bases;
}

FactorMats subspace_factors(const Shape& shape, int r, const std::vector<Eigen::MatrixXcd>& bases,
                            uint64_t seed, double scale) {
    SplitMix64 g(seed);
    FactorMats X(shape.order());
    for (int j = 0; j < shape.order(); ++j) {
        int k = static_cast<int>(bases[j].cols());
        Eigen::MatrixXcd mix(k, r);
        for (int a = 0; a < k; ++a)
            for (int i = 0; i < r; ++i) mix(a, i) = scale * Complex(2 * g.real() - 1, 2 * g.real() - 1);
        X[j] = bases[j] * mix;
    }
    return X;
}

FactorMats factors_from_decomposition(const Decomposition<Complex>& dec) {
    const int d = dec.shape.order();
    const int r = static_cast<int>(dec.terms.size());
    FactorMats X(d);
    for (int j = 0; j < d; ++j) X[j] = Eigen::MatrixXcd::Zero(dec.shape.dims[j], r);
    for (int i = 0; i < r; ++i) {
        const auto& term = dec.terms[i];
        double mag = std::abs(term.weight);
        Complex phase = mag > 0 ? term.weight / mag : Complex(1.0);
        double spread = std::pow(std::max(mag, 1e-300), 1.0 / d);
        for (int j = 0; j < d; ++j)
            for (int a = 0; a < dec.shape.dims[j]; ++a) {
                Complex v = term.factors[j][a] * spread;
                if (j == 0) v *= phase;
                X[j](a, i) = v;
            }
    }
    return X;
}

} // namespace

GuardCheck check_decomposition(const CTensor& t, const Decomposition<Complex>& dec, double fit_tol,
                               double guard_factor) {
    GuardCheck g;
    const double tnorm = frobenius_norm(t);
    CTensor model = evaluate(dec);
    double res = 0;
    for (int64_t off = 0; off < t.shape.num_entries(); ++off)
        res += std::norm(model.entries[off] - t.entries[off]);
    g.residual = std::sqrt(res) / (tnorm > 0 ? tnorm : 1.0);
    FactorMats X = factors_from_decomposition(dec);
    g.max_balanced_norm = rebalance(X);
    g.guard_bound = guard_factor * std::pow(tnorm, 1.0 / t.shape.order());
    g.fits = g.residual < fit_tol;
    g.guard_ok = g.max_balanced_norm < g.guard_bound;
    return g;
}

std::optional<RankCertificate> als_rank_upper(const CTensor& t, int r_cap, const AlsOptions& opt,
                                              std::vector<AlsDiagnostics>* diagnostics) {
    const double tnorm = frobenius_norm(t);
    if (tnorm == 0) {
        RankCertificate c;
        c.kind = CertKind::DecompositionUpper;
        c.value = 0;
        c.is_upper = true;
        c.dec_numeric = Decomposition<Complex>{t.shape, {}};
        return c;
    }
    int r_lo = std::max<int64_t>(1, flattening_lower_bound(t).value);
    if (opt.r_start > r_lo) r_lo = opt.r_start;
    const double guard_bound = opt.guard_factor * std::pow(tnorm, 1.0 / t.shape.order());
    const auto bases = hosvd_bases(t);
    for (int r = r_lo; r <= r_cap; ++r) {
        AlsDiagnostics diag;
        diag.r = r;
        std::optional<AlsRun> accepted;
        std::vector<FactorMats> inits;
        for (const auto& warm : opt.warm_starts)
            if (static_cast<int>(warm.terms.size()) == r) inits.push_back(factors_from_decomposition(warm));
        for (auto& lg : leurgans_starts(t, r, derive_seed(opt.seed, 0x1e06, r)))
            inits.push_back(std::move(lg));
        const double scale = std::pow(tnorm / std::sqrt(double(r)), 1.0 / t.shape.order());
        for (int s = 0; s < opt.starts; ++s) {
            uint64_t sd = derive_seed(opt.seed, static_cast<uint64_t>(r), s);
            inits.push_back(s % 2 ? random_factors(t.shape, r, sd, scale)
                                  : subspace_factors(t.shape, r, bases, sd, scale));
        }
        for (auto& X0 : inits) {
            AlsRun run = als_run(t, r, std::move(X0), opt.max_iter, opt.fit_tol);
            diag.best_residual = std::min(diag.best_residual, run.residual);
            if (run.residual < opt.fit_tol) {
                if (run.max_balanced_norm < guard_bound) {
                    accepted = std::move(run);
                    break;
                }
                ++diag.guard_trips; // border-rank escape: fits only with exploding factors
            }
        }
        diag.accepted = accepted.has_value();
        if (diagnostics) diagnostics->push_back(diag);
        if (accepted) {
            RankCertificate c;
            c.kind = CertKind::DecompositionUpper;
            c.value = r;
            c.is_upper = true;
            c.dec_numeric = decomposition_from_factors(t.shape, accepted->X);
            c.guard_bound = guard_bound;
            c.note = "multi-start ALS fit, residual " + std::to_string(accepted->residual);
            return c;
        }
    }
    return std::nullopt;
}

Decomposition<Complex> direct_sum_decomposition(const Decomposition<Complex>& a,
                                                const Decomposition<Complex>& b) {
    if (a.shape.order() != b.shape.order())
        throw std::invalid_argument("direct_sum_decomposition: mode counts differ");
    const int d = a.shape.order();
    std::vector<int> dims(d);
    for (int j = 0; j < d; ++j) dims[j] = a.shape.dims[j] + b.shape.dims[j];
    Decomposition<Complex> out;
    out.shape = Shape(dims);
    for (const auto& t : a.terms) {
        RankOneTerm<Complex> nt{t.weight, {}};
        for (int j = 0; j < d; ++j) {
            std::vector<Complex> f(dims[j], 0.0);
            std::copy(t.factors[j].begin(), t.factors[j].end(), f.begin());
            nt.factors.push_back(std::move(f));
        }
        out.terms.push_back(std::move(nt));
    }
    for (const auto& t : b.terms) {
        RankOneTerm<Complex> nt{t.weight, {}};
        for (int j = 0; j < d; ++j) {
            std::vector<Complex> f(dims[j], 0.0);
            std::copy(t.factors[j].begin(), t.factors[j].end(), f.begin() + a.shape.dims[j]);
            nt.factors.push_back(std::move(f));
        }
        out.terms.push_back(std::move(nt));
    }
    return out;
}

Decomposition<Complex> kronecker_decomposition(const Decomposition<Complex>& a,
                                               const Decomposition<Complex>& b) {
    if (a.shape.order() != b.shape.order())
        throw std::invalid_argument("kronecker_decomposition: mode counts differ");
    const int d = a.shape.order();
    std::vector<int> dims(d);
    for (int j = 0; j < d; ++j) dims[j] = a.shape.dims[j] * b.shape.dims[j];
    Decomposition<Complex> out;
    out.shape = Shape(dims);
    for (const auto& ta : a.terms)
        for (const auto& tb : b.terms) {
            RankOneTerm<Complex> nt{ta.weight * tb.weight, {}};
            for (int j = 0; j < d; ++j) {
                std::vector<Complex> f;
                f.reserve(dims[j]);
                for (const Complex& x : ta.factors[j])
                    for (const Complex& y : tb.factors[j]) f.push_back(x * y);
                nt.factors.push_back(std::move(f));
            }
            out.terms.push_back(std::move(nt));
        }
    return out;
}

QTensor kron_collapse(const QTensor& t) {
    const int d2 = t.shape.order();
    if (d2 % 2) throw std::invalid_argument("kron_collapse: even mode count required");
    const int p = d2 / 2;
    std::vector<int> dims(p);
    for (int j = 0; j < p; ++j) dims[j] = t.shape.dims[j] * t.shape.dims[j + p];
    QTensor out{Shape(dims)};
    std::vector<int> idx, oidx(p);
    for (int64_t off = 0; off < t.shape.num_entries(); ++off) {
        unravel(off, t.shape, idx);
        for (int j = 0; j < p; ++j) oidx[j] = idx[j] * t.shape.dims[j + p] + idx[j + p];
        out.at(oidx) = t.entries[off];
    }
    return out;
}

namespace {
std::vector<QMat> wkron2_paper_slices() {
    QTensor x = kronecker(w_state(3), w_state(3));
    // the paper labels A_1..A_4 against the reversed slice order: A_1 = |00>
    // is the slice at third index 4, A_4 the antidiagonal at index 1
    std::vector<QMat> a(4, QMat(4, 4));
    std::vector<int> idx(3);
    for (int j = 0; j < 4; ++j)
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) {
                idx = {r, c, 3 - j};
                a[j](r, c) = x.at(idx);
            }
    return a;
}
} // namespace

bool verify_determinant_identity(const std::vector<QMat>& slices, uint64_t seed, int points,
                                 std::vector<std::array<long, 3>>* used) {
    if (slices.size() != 4) throw std::invalid_argument("verify_determinant_identity: four slices");
    SplitMix64 g(seed);
    for (int k = 0; k < points; ++k) {
        std::array<long, 3> pt{};
        for (auto& v : pt) v = static_cast<long>(g.range(-1000000, 1000000));
        QMat m = slices[3];
        for (int s = 0; s < 3; ++s) {
            GaussianRational c{Rational(pt[s])};
            for (size_t e = 0; e < m.a.size(); ++e) m.a[e] += c * slices[s].a[e];
        }
        if (used) used->push_back(pt);
        if (exact_det(m) != GaussianRational(1)) return false;
    }
    return true;
}

RankCertificate w3kron2_determinant_certificate(uint64_t seed) {
    auto slices = wkron2_paper_slices();
    RankCertificate c;
    c.kind = CertKind::DeterminantLower;
    c.value = 7;
    c.is_lower = true;
    if (!verify_determinant_identity(slices, derive_seed(seed, 0xde7), 5, &c.det_points))
        throw std::logic_error("w3kron2_determinant_certificate: determinant identity failed");
    c.note = "det(A4 + a.A) = 1 at 5 random points; span argument gives rank >= 7";
    return c;
}

StrassenVerdict strassen_condition(const Shape& ns, const Shape& ps, const StrassenEvidence& en,
                                   const StrassenEvidence& ep) {
    if (ns.order() != 3 || ps.order() != 3)
        throw std::invalid_argument("strassen_condition: d = 3 shapes required");
    auto has2 = [](const Shape& s) {
        for (int v : s.dims)
            if (v == 2) return true;
        return false;
    };
    if (has2(ns) || has2(ps)) return {true, "a mode of size 2"};
    auto prodcond = [](const Shape& s) {
        const auto& d = s.dims;
        int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 2, 0}, {1, 0, 2}, {2, 0, 1}, {2, 1, 0}};
        for (auto& pm : perm)
            if (static_cast<int64_t>(d[pm[0]]) * d[pm[1]] - d[pm[2]] == 2) return true;
        return false;
    };
    if (prodcond(ns) || prodcond(ps)) return {true, "n_i n_j - n_k = 2"};
    auto two3s = [](const Shape& s) {
        int c = 0;
        for (int v : s.dims) c += v == 3;
        return c >= 2;
    };
    if (two3s(ns) || two3s(ps)) return {true, "(p1,3,3) shape"};
    auto rank_side = [](const StrassenEvidence& e) -> StrassenVerdict {
        if (e.rank_upper && *e.rank_upper <= 6) return {true, "r(U) <= 6"};
        if (e.rank_upper && e.flattening_lower && *e.flattening_lower + 2 >= *e.rank_upper)
            return {true, "max flattening + 2 >= r(U)"};
        return {false, ""};
    };
    if (auto v = rank_side(en); v.holds) return v;
    if (auto v = rank_side(ep); v.holds) return v;
    return {false, "no condition verified"};
}

namespace {

// scalar multiple detection: t == c * s with c from the first nonzero entry
std::optional<GaussianRational> scalar_multiple_of(const QTensor& t, const QTensor& s) {
    if (t.shape != s.shape) return std::nullopt;
    GaussianRational c;
    bool found = false;
    for (size_t k = 0; k < s.entries.size(); ++k) {
        if (s.entries[k].is_zero()) {
            if (!t.entries[k].is_zero()) return std::nullopt;
            continue;
        }
        if (!found) {
            c = t.entries[k] / s.entries[k];
            found = true;
        } else if (t.entries[k] != c * s.entries[k]) {
            return std::nullopt;
        }
    }
    if (!found || c.is_zero()) return std::nullopt;
    return c;
}

void add_formula_caps(const QTensor& t, RankReport& rep) {
    const Shape& s = t.shape;
    int64_t maxd = *std::max_element(s.dims.begin(), s.dims.end());
    RankCertificate c;
    c.kind = CertKind::TableKnown;
    c.is_upper = true;
    c.value = s.num_entries() / maxd;
    c.note = "formula cap: N(n)/max dim";
    rep.certificates.push_back(c);
    Shape sq = s.squeezed();
    if (sq.order() == 3) {
        auto b = max_rank_upper_bounds(sq.dims[0], sq.dims[1], sq.dims[2]);
        RankCertificate c3;
        c3.kind = CertKind::TableKnown;
        c3.is_upper = true;
        c3.value = b.value;
        c3.note = "formula cap: max-rank bounds (" + b.bounds.front().first + " et al.)";
        rep.certificates.push_back(c3);
    }
}

} // namespace

RankReport rank_report(const QTensor& t, const ReportOptions& opt) {
    RankReport rep;
    if (t.is_zero()) {
        rep.lower = rep.upper = 0;
        rep.exact = 0;
        RankCertificate c;
        c.kind = CertKind::DecompositionUpper;
        c.value = 0;
        c.is_upper = true;
        c.dec_exact = Decomposition<GaussianRational>{t.shape, {}};
        rep.certificates.push_back(c);
        return rep;
    }

    rep.certificates.push_back(flattening_lower_bound(t));
    add_formula_caps(t, rep);

    const Shape sq = t.shape.squeezed();
    bool pencil_applies = sq.order() == 3 && std::count(sq.dims.begin(), sq.dims.end(), 2) > 0;
    if (t.shape.order() == 3 && pencil_applies && sq == t.shape) {
        PencilRankResult pr = rank_mxnx2(t);
        RankCertificate c;
        c.kind = CertKind::PencilExact;
        c.value = pr.rank;
        c.is_lower = c.is_upper = true;
        c.note = "Kronecker pencil structure (" + to_string(pr.certificate) + ")";
        rep.certificates.push_back(c);
    }

    // named states: table values are flagged, never merged; the W3 Kronecker
    // square additionally gets computed determinant + Waring certificates
    std::vector<Decomposition<Complex>> warm = opt.warm_starts;
    auto add_table = [&](int64_t v, const std::string& what) {
        RankCertificate c;
        c.kind = CertKind::TableKnown;
        c.value = v;
        c.participates = false;
        c.note = "known value: " + what;
        rep.certificates.push_back(c);
    };
    {
        const auto& dims = t.shape.dims;
        bool cube2 = std::all_of(dims.begin(), dims.end(), [](int v) { return v == 2; });
        if (cube2 && t.shape.order() >= 2 && scalar_multiple_of(t, w_state(t.shape.order())))
            add_table(t.shape.order(), "r(W_d) = d");
        if (t.shape.order() >= 2) {
            bool cube = std::all_of(dims.begin(), dims.end(), [&](int v) { return v == dims[0]; });
            if (cube && scalar_multiple_of(t, ghz_state(dims[0], t.shape.order())))
                add_table(dims[0], "r(GHZ(n,d)) = n (identity tensor)");
        }
        if (t.shape == Shape({4, 4, 4}) && t == kronecker(w_state(3), w_state(3))) {
            rep.certificates.push_back(w3kron2_determinant_certificate(opt.seed));
            auto waring = waring_w3kron_decomposition();
            if (!(evaluate(waring) == t)) throw std::logic_error("rank_report: Waring construction failed");
            RankCertificate c;
            c.kind = CertKind::DecompositionUpper;
            c.value = static_cast<int64_t>(waring.terms.size());
            c.is_upper = true;
            c.dec_exact = waring;
            c.note = "explicit symmetric Waring decomposition";
            rep.certificates.push_back(c);
            add_table(7, "r(W3 (x)_K W3) = 7");
            warm.push_back(to_numeric(waring));
        }
        if (t.shape == Shape(std::vector<int>(6, 2)) && t == tensor_product(w_state(3), w_state(3))) {
            // Kronecker collapse maps rank-one terms to rank-one terms, so the
            // (4,4,4) determinant bound transfers to the 6-mode tensor
            QTensor collapsed = kron_collapse(t);
            if (!(collapsed == kronecker(w_state(3), w_state(3))))
                throw std::logic_error("rank_report: Kronecker collapse mismatch");
            RankCertificate c = w3kron2_determinant_certificate(opt.seed);
            c.note += "; applied to the Kronecker collapse of the 6-mode tensor";
            rep.certificates.push_back(c);
            add_table(8, "r(W3 (x) W3) = 8");
            warm.push_back(w3_tensor_square_decomposition());
        }
    }

    // ALS upper bound (numeric route); the sweep starts at the best computed
    // lower bound, below which the guard blocks every exact fit anyway
    {
        int64_t cap = opt.r_cap;
        int64_t lower_so_far = 1;
        if (cap <= 0) {
            cap = t.shape.num_entries() / *std::max_element(t.shape.dims.begin(), t.shape.dims.end());
            for (const auto& c : rep.certificates)
                if (c.is_upper && c.participates) cap = std::min<int64_t>(cap, c.value);
        }
        for (const auto& c : rep.certificates)
            if (c.is_lower && c.participates) lower_so_far = std::max(lower_so_far, c.value);
        AlsOptions aopt;
        aopt.fit_tol = opt.fit_tol;
        aopt.starts = opt.als_starts;
        aopt.max_iter = opt.als_iters;
        aopt.seed = opt.seed;
        aopt.r_start = static_cast<int>(lower_so_far);
        aopt.warm_starts = warm;
        auto cert = als_rank_upper(to_numeric(t), static_cast<int>(cap), aopt);
        if (cert) rep.certificates.push_back(*cert);
    }

    rep.lower = 0;
    rep.upper = INT64_MAX;
    for (const auto& c : rep.certificates) {
        if (!c.participates) continue;
        if (c.is_lower) rep.lower = std::max(rep.lower, c.value);
        if (c.is_upper) rep.upper = std::min(rep.upper, c.value);
    }
    if (rep.upper == INT64_MAX) rep.upper = t.shape.num_entries();
    if (rep.lower > rep.upper)
        throw std::logic_error("rank_report: contradictory certificates (lower > upper)");
    for (const auto& c : rep.certificates)
        if (!c.participates && (c.value < rep.lower || c.value > rep.upper))
            throw std::logic_error("rank_report: known table value contradicts computed bounds");
    if (rep.lower == rep.upper) rep.exact = rep.lower;
    return rep;
}

bool verify_certificate(const RankCertificate& c, const QTensor& t, uint64_t seed) {
    try {
        switch (c.kind) {
            case CertKind::FlatteningLower: {
                int64_t best = 0;
                if (c.mode_splits.size() != c.split_ranks.size()) return false;
                for (size_t i = 0; i < c.mode_splits.size(); ++i) {
                    int64_t r = exact_rank(flatten(t, c.mode_splits[i]));
                    if (r != c.split_ranks[i]) return false;
                    best = std::max(best, r);
                }
                return best == c.value;
            }
            case CertKind::PencilExact:
                return rank_mxnx2(t).rank == c.value;
            case CertKind::DecompositionUpper: {
                if (c.dec_exact) {
                    if (static_cast<int64_t>(c.dec_exact->nonzero_terms()) > c.value) return false;
                    return evaluate(*c.dec_exact) == t;
                }
                if (!c.dec_numeric) return false;
                if (static_cast<int64_t>(c.dec_numeric->terms.size()) > c.value) return false;
                GuardCheck g = check_decomposition(to_numeric(t), *c.dec_numeric, 1e-6);
                return g.fits && g.guard_ok;
            }
            case CertKind::KruskalExact: {
                if (!c.dec_exact) return false;
                auto re = kruskal_certificate(*c.dec_exact);
                if (!re || re->value != c.value) return false;
                return evaluate(*c.dec_exact) == t;
            }
            case CertKind::DeterminantLower: {
                QTensor x = t.shape.order() == 6 ? kron_collapse(t) : t;
                if (!(x == kronecker(w_state(3), w_state(3)))) return false;
                return verify_determinant_identity(wkron2_paper_slices(), seed, 5, nullptr);
            }
            case CertKind::TableKnown:
                return true; // informational; formulas are re-derivable from the shape
        }
    } catch (const std::exception&) {
        return false;
    }
    return false;
}

} // namespace tensorank
