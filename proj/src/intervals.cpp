#include "claycop/intervals.hpp"

#include <algorithm>
#include <stdexcept>

#include "claycop/stats.hpp"

namespace claycop {

BootstrapPopulation ci_resample_population(const PseudoSample& pseudo,
                                           Alpha alpha_tilde, int n_replicas,
                                           RandomStream& stream,
                                           const AiConfig& cfg) {
    const std::vector<double> pool = ecdf_values(pseudo);
    BootstrapPopulation pop{{}, Provenance::ci_resample};
    pop.estimates.reserve(static_cast<std::size_t>(n_replicas));
    for (int r = 0; r < n_replicas; ++r) {
        pop.estimates.push_back(
            replica_estimate(pseudo, alpha_tilde, pool, stream, cfg)
                .alpha_hat);
    }
    return pop;
}

ConfidenceInterval confidence_interval(
    std::span<const BootstrapPopulation> populations, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("confidence_interval: bad level");
    std::vector<double> merged;
    for (const auto& pop : populations)
        merged.insert(merged.end(), pop.estimates.begin(),
                      pop.estimates.end());
    if (merged.empty())
        throw std::invalid_argument("confidence_interval: empty populations");
    std::sort(merged.begin(), merged.end());
    const double tail = 0.5 * (1.0 - level);
    return {quantile_nearest_rank(merged, tail),
            quantile_nearest_rank(merged, 1.0 - tail), level,
            static_cast<int>(populations.size())};
}

double coverage(std::span<const ConfidenceInterval> intervals,
                Alpha true_alpha) {
    if (intervals.empty())
        throw std::invalid_argument("coverage: empty interval list");
    std::size_t hits = 0;
    for (const auto& ci : intervals)
        if (ci.lower <= true_alpha.value && true_alpha.value <= ci.upper)
            ++hits;
    return static_cast<double>(hits) / static_cast<double>(intervals.size());
}

}  // namespace claycop
