#pragma once

#include "claycop/rng.hpp"
#include "claycop/types.hpp"

namespace claycop {

/// Clayton generator phi(u) = (u^-alpha - 1)/alpha. Decreasing convex on
/// (0,1] with phi(1) = 0. Throws std::domain_error for u <= 0.
double generator_phi(Alpha alpha, double u);

/// C(u1,u2) = (u1^-a + u2^-a - 1)^(-1/a). Accepts coordinates in (0,1].
double copula_cdf(Alpha alpha, UnitPair p);

/// Clayton density. Evaluated in log space so it saturates (to +inf or 0)
/// instead of overflowing near the corners.
double copula_pdf(Alpha alpha, UnitPair p);

/// Conditional CDF of U2 given U1 = given_u1; strictly increasing in u2.
double conditional_cdf(Alpha alpha, double u2, double given_u1);

/// Deterministic conditional-inversion map from two independent uniform
/// seeds (v1,v2) to a copula draw (u1,u2). Outputs clamped into
/// (kUnitEps, 1-kUnitEps).
UnitPair pair_from_seeds(Alpha alpha, double v1, double v2);

/// Draw one (u1,u2) pair by conditional inversion, consuming two
/// uniforms from the stream.
UnitPair sample_pair(Alpha alpha, RandomStream& stream);

/// Kendall function K(t) = t(alpha - t^alpha + 1)/alpha on [0,1].
double kendall_cdf(Alpha alpha, double t);

/// Density of the Kendall function: (alpha+1)(1 - t^alpha)/alpha.
double kendall_pdf(Alpha alpha, double t);

/// Unique t in (0,1) with K(t) = u, by bisection to 1e-12.
double kendall_inverse(Alpha alpha, double u);

/// Population Kendall tau of the Clayton family, alpha/(alpha+2).
double kendall_tau(Alpha alpha);

}  // namespace claycop
