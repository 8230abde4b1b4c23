#pragma once

#include <cmath>
#include <stdexcept>

namespace claycop {

inline constexpr double kUnitEps = 1e-12;

/// Clamp a value into [eps, 1-eps] so downstream logs and negative
/// powers stay finite.
inline double clamp_unit(double x, double eps = kUnitEps) {
    if (x < eps) return eps;
    if (x > 1.0 - eps) return 1.0 - eps;
    return x;
}

/// The positive Clayton dependence parameter.
struct Alpha {
    double value;

    explicit Alpha(double v) : value(v) {
        if (!(std::isfinite(v) && v > 0.0))
            throw std::domain_error("Alpha must be a finite positive real");
    }
};

/// A point on the unit square, both coordinates in (0,1).
struct UnitPair {
    double u1;
    double u2;
};

}  // namespace claycop
