#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace claycop {

/// A bivariate sample; only the pairwise coordinate order matters.
struct BivariateSample {
    std::vector<std::array<double, 2>> points;

    std::size_t size() const { return points.size(); }
};

/// Kendall pseudo-observations t_1..t_m, clamped away from {0,1}.
struct PseudoSample {
    std::vector<double> t;

    std::size_t size() const { return t.size(); }
};

/// Half a count step: the clamp margin applied to raw pseudo-observations.
inline double rank_clamp_eps(std::size_t m) {
    return 0.5 / static_cast<double>(m - 1);
}

/// t_i = #{j : x_j1 < x_i1 and x_j2 < x_i2} / (m-1), strict inequalities,
/// then clamped into [eps_t, 1-eps_t] with eps_t = 1/(2(m-1)).
/// Throws std::invalid_argument if m < 2.
PseudoSample pseudo_sample(const BivariateSample& sample);

/// Hazen plotting positions (rank - 0.5)/m of the pseudo-observations,
/// average ranks for ties, returned in ascending order. This is the seed
/// pool the bootstrap draws from.
std::vector<double> ecdf_values(const PseudoSample& pseudo);

}  // namespace claycop
