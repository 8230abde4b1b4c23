#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace claycop {

double mean(std::span<const double> xs);

/// Sample standard deviation (n-1 denominator); 0 for fewer than 2 values.
double sample_stdev(std::span<const double> xs);

double median(std::vector<double> xs);

/// Nearest-rank quantile of a sorted sequence: x_(ceil(p*n)), 1-based.
double quantile_nearest_rank(std::span<const double> sorted, double p);

/// Empirical Kendall tau of a bivariate sample without ties, via
/// O(n log n) inversion counting.
double kendall_tau_sample(std::span<const std::array<double, 2>> points);

/// Standard normal quantile, accurate to well below 1e-9.
double normal_quantile(double p);

/// Kolmogorov sup-distance between the ECDF of the values and a CDF.
double kolmogorov_distance(std::vector<double> values,
                           const std::function<double(double)>& cdf);

}  // namespace claycop
