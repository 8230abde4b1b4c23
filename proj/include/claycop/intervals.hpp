#pragma once

#include <span>

#include "claycop/estimators.hpp"

namespace claycop {

struct ConfidenceInterval {
    double lower;
    double upper;
    double level;
    int pooled_count;
};

/// Independent bootstrap replicas at a frozen alpha_tilde (typically an
/// ai_estimate tail median); provenance ci_resample.
BootstrapPopulation ci_resample_population(const PseudoSample& pseudo,
                                           Alpha alpha_tilde, int n_replicas,
                                           RandomStream& stream,
                                           const AiConfig& cfg = {});

/// Merges the populations and reads the nearest-rank quantiles at
/// ((1-level)/2, 1-(1-level)/2). Throws on empty input.
ConfidenceInterval confidence_interval(
    std::span<const BootstrapPopulation> populations, double level);

/// Fraction of intervals with lower <= true_alpha <= upper.
double coverage(std::span<const ConfidenceInterval> intervals,
                Alpha true_alpha);

}  // namespace claycop
