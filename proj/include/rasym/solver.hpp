#pragma once

#include <string>
#include <utility>

#include "rasym/asym_series.hpp"
#include "rasym/reciprocity.hpp"

namespace rasym {

// Solves the asymptotic expansion of the u-sequence by undetermined
// coefficients against the shifted functional equation u_{k+1} = g_u(u_k):
//
//   u_k = lambda^(1/tau) k^(-1/tau) (1 + sum_{m=1..M} sum_{l<=m} c_{m,l} ln(k)^l k^(-m))
//
// Orders are matched m = 1..M, within an order from the highest log power
// down; each step is triangular. Exactly one scalar degree of freedom (the
// internal constant kappa) survives, entering at (m=1, l=0).
AsymSeries solve_u_series(const MLForm& ml, int M);

// y = u^t and x = 1/y in the same scale frame.
std::pair<AsymSeries, AsymSeries> derive_xy_series(const AsymSeries& u, long t);

// g_u applied to a series: u + a_1 u^(tau+1) + a_2 u^(2tau+1) + ...
// (used by the solver's residual and by the residual property checks).
AsymSeries apply_u_map(const MLForm& ml, const AsymSeries& u);

struct NormalizedExpansion {
    MLForm ml;
    ScaleFactor report_scale;  // s, from the case config
    Rational rho;              // s * lambda^(-t/tau), the scaled x prefactor
    AsymSeries u, y, x;        // coefficients polynomial in C
    Rational b1;               // ln(k) coefficient at the first corrected order of s*x
    int c_slot_m = 0;          // inner order where C first appears log-free
    Rational c_slot_kexp;      // its k-exponent in the x display
    std::string definition;    // the limit formula defining C
};

// Locates the first log-free kappa-dependent coefficient of the rho-scaled
// x-series, defines C as that displayed coefficient, and rewrites all three
// series in terms of C. Requires rho rational.
NormalizedExpansion normalize_constant(const MLForm& ml, const AsymSeries& u_raw,
                                       const ScaleFactor& report_scale);

}  // namespace rasym
