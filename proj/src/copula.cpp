#include "claycop/copula.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace claycop {

double generator_phi(Alpha alpha, double u) {
    if (u <= 0.0)
        throw std::domain_error("generator_phi: u must be in (0,1]");
    return (std::pow(u, -alpha.value) - 1.0) / alpha.value;
}

double copula_cdf(Alpha alpha, UnitPair p) {
    const double a = alpha.value;
    const double s = std::pow(p.u1, -a) + std::pow(p.u2, -a) - 1.0;
    return std::pow(s, -1.0 / a);
}

double copula_pdf(Alpha alpha, UnitPair p) {
    const double a = alpha.value;
    const double l1 = std::log(p.u1);
    const double l2 = std::log(p.u2);
    // log of s = u1^-a + u2^-a - 1 without forming the overflowing powers
    const double e1 = -a * l1;
    const double e2 = -a * l2;
    const double hi = std::max(e1, e2);
    const double log_s =
        hi + std::log(std::exp(e1 - hi) + std::exp(e2 - hi) - std::exp(-hi));
    const double log_pdf =
        std::log1p(a) - (a + 1.0) * (l1 + l2) + (-1.0 / a - 2.0) * log_s;
    return std::exp(log_pdf);
}

double conditional_cdf(Alpha alpha, double u2, double given_u1) {
    const double a = alpha.value;
    const double s = std::pow(given_u1, -a) + std::pow(u2, -a) - 1.0;
    return std::pow(s, -1.0 / a - 1.0) * std::pow(given_u1, -a - 1.0);
}

UnitPair pair_from_seeds(Alpha alpha, double v1, double v2) {
    const double a = alpha.value;
    const double u1 = clamp_unit(v1);
    const double inner =
        1.0 + std::pow(u1, -a) * (std::pow(v2, -a / (a + 1.0)) - 1.0);
    const double u2 = clamp_unit(std::pow(inner, -1.0 / a));
    return {u1, u2};
}

UnitPair sample_pair(Alpha alpha, RandomStream& stream) {
    const double v1 = stream.next_unit();
    const double v2 = stream.next_unit();
    return pair_from_seeds(alpha, v1, v2);
}

double kendall_cdf(Alpha alpha, double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = alpha.value;
    return t * (a - std::pow(t, a) + 1.0) / a;
}

double kendall_pdf(Alpha alpha, double t) {
    const double a = alpha.value;
    return (a + 1.0) * (1.0 - std::pow(t, a)) / a;
}

double kendall_inverse(Alpha alpha, double u) {
    double lo = 0.0;
    double hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (kendall_cdf(alpha, mid) < u)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double kendall_tau(Alpha alpha) { return alpha.value / (alpha.value + 2.0); }

}  // namespace claycop
