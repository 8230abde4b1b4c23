#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "claycop/pseudo.hpp"
#include "claycop/rng.hpp"
#include "claycop/types.hpp"

namespace claycop {

/// Thrown when an estimation step cannot proceed (replica exhaustion,
/// non-finite update, ...).
struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Knobs of the bootstrap / mean-field procedure. Defaults mirror the
/// experimental protocol: 300 burn-in steps, 300 tail steps, smoothing
/// coefficient 0.1, retry limit 100, alpha bracket (1e-4, 100).
struct AiConfig {
    int burn_in_steps = 300;
    int tail_steps = 300;
    double smoothing_eta = 0.1;
    int replica_retry_limit = 100;
    double bracket_lo = 1e-4;
    double bracket_hi = 100.0;
    /// Sensitivity switch: draw bootstrap seeds uniformly on (0,1) instead
    /// of from the plotting-position pool.
    bool uniform_seed_draw = false;
};

struct MleResult {
    double alpha;
    /// Set when the maximizer lies within 1% of a bracket endpoint.
    bool boundary_warning;
};

/// Maximizes the Kendall pseudo-log-likelihood
///   sum_i log kendall_pdf(alpha, t_i)
/// over [lo, hi] by coarse scan plus golden-section refinement to 1e-8
/// relative.
MleResult mle(const PseudoSample& pseudo, double lo = 1e-4, double hi = 100.0);

/// Solves w1 * a/(a+1) = (a (w1 - u))^(1/(a+1)) for w1 given u in (0,1).
/// Equivalently w1 = (a+1)/a * K^-1(a, u); always > u.
double solve_seed_w1(Alpha alpha, double u);

/// One solved seed: w1, the positive difference w1 - u, and the Kendall
/// value t = K^-1(alpha, u) they derive from.
struct SeedSolution {
    double w1;
    double diff;
    double t;
};

SeedSolution solve_seed(Alpha alpha, double u);

/// alpha1 = sum_t / (sum_w1 - sum_t); empty when sum_w1 <= sum_t, in which
/// case the caller redraws the replica.
std::optional<double> alpha1_hat(double sum_t, double sum_w1);

struct RootResult {
    double alpha;
    /// Set when no sign change existed on the bracket; alpha is then the
    /// endpoint minimizing the residual.
    bool degenerate;
};

/// Root of g(a) = (sum(log diffs) + m log a)/(a+1) - s2 by bisection to
/// 1e-10 on [lo, hi]. Requires s2 < 0 and every diff > 0.
RootResult alpha2_hat(double s2, std::span<const double> diffs, std::size_t m,
                      double lo, double hi);

/// One bootstrap draw of m seed pairs under a fixed reference alpha.
struct SeedReplica {
    std::vector<double> w1;
    std::vector<double> u;
    double alpha_used;
};

struct ReplicaEstimate {
    double alpha_hat;  // (alpha1 + alpha2) / 2
    double alpha1;
    double alpha2;
    SeedReplica replica;
    int rejections;  // redraws consumed before acceptance
};

/// Draws m seeds u_i from the pool (uniformly with replacement), solves
/// the seed equation under alpha_ref, and evaluates the paired estimators
/// against the fixed observed statistics s1 = sum t_i, s2 = sum log t_i.
/// Rejected draws (sum w1 <= s1, degenerate alpha2 root, underflowed
/// difference) are redrawn up to cfg.replica_retry_limit, after which an
/// EstimationError is thrown.
ReplicaEstimate replica_estimate(const PseudoSample& pseudo, Alpha alpha_ref,
                                 std::span<const double> seed_pool,
                                 RandomStream& stream,
                                 const AiConfig& cfg = {});

enum class Provenance { dummy, fixed_point_tail, ci_resample };

struct BootstrapPopulation {
    std::vector<double> estimates;
    Provenance provenance;
};

struct TraceStep {
    int step;
    double alpha1;
    double alpha2;
    double alpha_smoothed;
};

struct MeanFieldTrace {
    std::vector<TraceStep> steps;
};

struct DummyResult {
    double estimate;  // median of the population
    BootstrapPopulation population;
};

/// Validation mode: replicas drawn with alpha_ref fixed at the known true
/// alpha; the point estimate is the population median.
DummyResult dummy_ai_estimate(const PseudoSample& pseudo, Alpha true_alpha,
                              int n_replicas, RandomStream& stream,
                              const AiConfig& cfg = {});

struct AiResult {
    double estimate;  // median of the tail population
    MeanFieldTrace trace;
    BootstrapPopulation tail;
    MleResult init;
};

/// The mean-field fixed-point estimator: starts from the MLE, smooths the
/// per-step combined estimate with coefficient eta, and reads the final
/// estimate off the median of the raw values collected over the tail
/// steps.
AiResult ai_estimate(const PseudoSample& pseudo, const AiConfig& cfg,
                     RandomStream& stream);

}  // namespace claycop
