#include "claycop/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "claycop/copula.hpp"
#include "claycop/stats.hpp"

namespace claycop {

namespace {

double log_likelihood(const PseudoSample& pseudo, double a) {
    const double m = static_cast<double>(pseudo.size());
    double sum = 0.0;
    for (double t : pseudo.t) sum += std::log1p(-std::pow(t, a));
    return m * (std::log1p(a) - std::log(a)) + sum;
}

}  // namespace

MleResult mle(const PseudoSample& pseudo, double lo, double hi) {
    // Coarse log-spaced scan to bracket the maximizer, then golden-section.
    constexpr int kScanPoints = 256;
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    int best = 0;
    double best_ll = -std::numeric_limits<double>::infinity();
    std::vector<double> grid(kScanPoints);
    for (int i = 0; i < kScanPoints; ++i) {
        grid[i] = std::exp(llo + (lhi - llo) * i / (kScanPoints - 1));
        const double ll = log_likelihood(pseudo, grid[i]);
        if (ll > best_ll) {
            best_ll = ll;
            best = i;
        }
    }
    double a = grid[std::max(best - 1, 0)];
    double b = grid[std::min(best + 1, kScanPoints - 1)];

    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = log_likelihood(pseudo, x1);
    double f2 = log_likelihood(pseudo, x2);
    while (b - a > 1e-8 * std::max(1.0, a)) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = log_likelihood(pseudo, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = log_likelihood(pseudo, x1);
        }
    }
    const double est = 0.5 * (a + b);
    const double margin = 0.01 * (hi - lo);
    const bool warn = est < lo + margin || est > hi - margin;
    return {est, warn};
}

SeedSolution solve_seed(Alpha alpha, double u) {
    const double a = alpha.value;
    const double t = kendall_inverse(alpha, u);
    const double diff = std::pow(t, a + 1.0) / a;
    return {u + diff, diff, t};
}

double solve_seed_w1(Alpha alpha, double u) { return solve_seed(alpha, u).w1; }

std::optional<double> alpha1_hat(double sum_t, double sum_w1) {
    if (sum_w1 <= sum_t) return std::nullopt;
    return sum_t / (sum_w1 - sum_t);
}

RootResult alpha2_hat(double s2, std::span<const double> diffs, std::size_t m,
                      double lo, double hi) {
    if (s2 >= 0.0)
        throw std::domain_error("alpha2_hat: s2 must be negative");
    double sum_log = 0.0;
    for (double d : diffs) {
        if (d <= 0.0)
            throw std::domain_error("alpha2_hat: differences must be positive");
        sum_log += std::log(d);
    }
    const double md = static_cast<double>(m);
    const auto g = [&](double a) {
        return (sum_log + md * std::log(a)) / (a + 1.0) - s2;
    };

    double glo = g(lo);
    double ghi = g(hi);
    if (glo == 0.0) return {lo, false};
    if (ghi == 0.0) return {hi, false};
    if ((glo < 0.0) == (ghi < 0.0)) {
        return {std::abs(glo) <= std::abs(ghi) ? lo : hi, true};
    }
    double a = lo;
    double b = hi;
    for (int iter = 0; iter < 200 && b - a > 1e-10; ++iter) {
        const double mid = 0.5 * (a + b);
        const double gm = g(mid);
        if (gm == 0.0) return {mid, false};
        if ((gm < 0.0) == (glo < 0.0)) {
            a = mid;
            glo = gm;
        } else {
            b = mid;
        }
    }
    return {0.5 * (a + b), false};
}

ReplicaEstimate replica_estimate(const PseudoSample& pseudo, Alpha alpha_ref,
                                 std::span<const double> seed_pool,
                                 RandomStream& stream, const AiConfig& cfg) {
    const std::size_t m = pseudo.size();
    if (!cfg.uniform_seed_draw && seed_pool.empty())
        throw std::invalid_argument("replica_estimate: empty seed pool");

    double s1 = 0.0;
    double s2 = 0.0;
    for (double t : pseudo.t) {
        s1 += t;
        s2 += std::log(t);
    }

    std::vector<double> u(m);
    std::vector<double> w1(m);
    std::vector<double> diffs(m);
    for (int attempt = 0; attempt <= cfg.replica_retry_limit; ++attempt) {
        double sum_w1 = 0.0;
        bool ok = true;
        for (std::size_t i = 0; i < m; ++i) {
            u[i] = cfg.uniform_seed_draw
                       ? stream.next_unit()
                       : seed_pool[stream.next_index(seed_pool.size())];
            const SeedSolution sol = solve_seed(alpha_ref, u[i]);
            if (sol.diff <= 0.0) {  // underflowed t^(a+1)
                ok = false;
                break;
            }
            w1[i] = sol.w1;
            diffs[i] = sol.diff;
            sum_w1 += sol.w1;
        }
        if (!ok) continue;

        const auto a1 = alpha1_hat(s1, sum_w1);
        if (!a1) continue;
        const RootResult a2 =
            alpha2_hat(s2, diffs, m, cfg.bracket_lo, cfg.bracket_hi);
        if (a2.degenerate) continue;

        return {0.5 * (*a1 + a2.alpha),
                *a1,
                a2.alpha,
                SeedReplica{w1, u, alpha_ref.value},
                attempt};
    }
    throw EstimationError("replica_estimate: retry limit exhausted");
}

DummyResult dummy_ai_estimate(const PseudoSample& pseudo, Alpha true_alpha,
                              int n_replicas, RandomStream& stream,
                              const AiConfig& cfg) {
    const std::vector<double> pool = ecdf_values(pseudo);
    BootstrapPopulation pop{{}, Provenance::dummy};
    pop.estimates.reserve(static_cast<std::size_t>(n_replicas));
    for (int r = 0; r < n_replicas; ++r) {
        pop.estimates.push_back(
            replica_estimate(pseudo, true_alpha, pool, stream, cfg).alpha_hat);
    }
    return {median(pop.estimates), std::move(pop)};
}

AiResult ai_estimate(const PseudoSample& pseudo, const AiConfig& cfg,
                     RandomStream& stream) {
    const std::vector<double> pool = ecdf_values(pseudo);
    const MleResult init = mle(pseudo, cfg.bracket_lo, cfg.bracket_hi);

    double smoothed = init.alpha;
    MeanFieldTrace trace;
    const int total = cfg.burn_in_steps + cfg.tail_steps;
    trace.steps.reserve(static_cast<std::size_t>(total));
    BootstrapPopulation tail{{}, Provenance::fixed_point_tail};
    tail.estimates.reserve(static_cast<std::size_t>(cfg.tail_steps));

    for (int k = 1; k <= total; ++k) {
        const ReplicaEstimate rep =
            replica_estimate(pseudo, Alpha(smoothed), pool, stream, cfg);
        const double raw = rep.alpha_hat;
        smoothed = (1.0 - cfg.smoothing_eta) * smoothed +
                   cfg.smoothing_eta * raw;
        if (!std::isfinite(smoothed))
            throw EstimationError("ai_estimate: non-finite update at step " +
                                  std::to_string(k));
        smoothed = std::clamp(smoothed, cfg.bracket_lo, cfg.bracket_hi);
        trace.steps.push_back({k, rep.alpha1, rep.alpha2, smoothed});
        if (k > cfg.burn_in_steps) tail.estimates.push_back(raw);
    }
    return {median(tail.estimates), std::move(trace), std::move(tail), init};
}

}  // namespace claycop
