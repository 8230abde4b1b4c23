#include "claycop/pseudo.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "claycop/types.hpp"

namespace claycop {

PseudoSample pseudo_sample(const BivariateSample& sample) {
    const std::size_t m = sample.size();
    if (m < 2)
        throw std::invalid_argument("pseudo_sample: need at least 2 points");

    const double eps = rank_clamp_eps(m);
    PseudoSample out;
    out.t.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (sample.points[j][0] < sample.points[i][0] &&
                sample.points[j][1] < sample.points[i][1])
                ++count;
        }
        const double raw =
            static_cast<double>(count) / static_cast<double>(m - 1);
        out.t.push_back(clamp_unit(raw, eps));
    }
    return out;
}

std::vector<double> ecdf_values(const PseudoSample& pseudo) {
    const std::size_t m = pseudo.size();
    std::vector<double> sorted = pseudo.t;
    std::sort(sorted.begin(), sorted.end());

    std::vector<double> out(m);
    std::size_t i = 0;
    while (i < m) {
        std::size_t j = i;
        while (j < m && sorted[j] == sorted[i]) ++j;
        // 1-based ranks i+1 .. j averaged over the tie run
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);
        const double value = (avg_rank - 0.5) / static_cast<double>(m);
        for (std::size_t k = i; k < j; ++k) out[k] = value;
        i = j;
    }
    return out;
}

}  // namespace claycop
