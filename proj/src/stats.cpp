#include "claycop/stats.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace claycop {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_stdev(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n < 2) return 0.0;
    const double mu = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median: empty input");
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double quantile_nearest_rank(std::span<const double> sorted, double p) {
    if (sorted.empty())
        throw std::invalid_argument("quantile_nearest_rank: empty input");
    const double n = static_cast<double>(sorted.size());
    auto rank = static_cast<std::size_t>(std::ceil(p * n));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

namespace {

// Counts inversions with merge sort; ys is scratch-merged in place.
std::uint64_t count_inversions(std::vector<double>& ys, std::size_t lo,
                               std::size_t hi, std::vector<double>& scratch) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = count_inversions(ys, lo, mid, scratch) +
                        count_inversions(ys, mid, hi, scratch);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (ys[i] <= ys[j]) {
            scratch[k++] = ys[i++];
        } else {
            inv += mid - i;
            scratch[k++] = ys[j++];
        }
    }
    while (i < mid) scratch[k++] = ys[i++];
    while (j < hi) scratch[k++] = ys[j++];
    std::copy(scratch.begin() + static_cast<long>(lo),
              scratch.begin() + static_cast<long>(hi),
              ys.begin() + static_cast<long>(lo));
    return inv;
}

}  // namespace

double kendall_tau_sample(std::span<const std::array<double, 2>> points) {
    const std::size_t n = points.size();
    if (n < 2)
        throw std::invalid_argument("kendall_tau_sample: need >= 2 points");
    std::vector<std::array<double, 2>> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = sorted[i][1];
    std::vector<double> scratch(n);
    const std::uint64_t inv = count_inversions(ys, 0, n, scratch);
    const double pairs = 0.5 * static_cast<double>(n) *
                         static_cast<double>(n - 1);
    return 1.0 - static_cast<double>(inv) / pairs * 2.0;
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile: p must be in (0,1)");

    // Acklam's rational approximation ...
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
             c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r +
             a[5]) *
            q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r +
             1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q +
              c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // ... followed by one Halley step against erfc.
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

double kolmogorov_distance(std::vector<double> values,
                           const std::function<double(double)>& cdf) {
    if (values.empty())
        throw std::invalid_argument("kolmogorov_distance: empty input");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double f = cdf(values[i]);
        const double hi = (static_cast<double>(i) + 1.0) / n - f;
        const double lo = f - static_cast<double>(i) / n;
        sup = std::max({sup, hi, lo});
    }
    return sup;
}

}  // namespace claycop
