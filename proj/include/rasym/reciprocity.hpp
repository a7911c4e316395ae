#pragma once

#include <vector>

#include "rasym/expr.hpp"
#include "rasym/puiseux.hpp"
#include "rasym/rational.hpp"

namespace rasym {

// Normalized map data for the reciprocal-side algorithm: after the root
// substitution u = y^(1/t), the map reads
//
//   u_{k+1} = u_k + a_1 u_k^(tau+1) + a_2 u_k^(2*tau+1) + ...
//
// with a_1 < 0 and integer tau >= 1, so lambda = -1/(tau*a_1) > 0.
struct MLForm {
    long t = 1;
    long tau = 1;
    Rational lambda;
    std::vector<Rational> a;  // a_1 .. a_A, gaps on the step lattice stored as 0
    PuiseuxSeries u_map;
};

// Expands an expression at the substitution var -> base_series, exactly.
PuiseuxSeries expand_expr(const Expr& f, const PuiseuxSeries& base);

// Puiseux expansion at 0 of g(y) = 1/f(1/y), the reciprocal map. Requires
// f(1/y) = y^(-1) * (unit); the result's leading term is then proportional
// to y. Throws StructureError("not reciprocal-normalizable") otherwise.
PuiseuxSeries derive_g_series(const Expr& f, int order);

// Detects the root substitution t from g's exponent lattice, computes the
// u-map (g(u^t))^(1/t), reads off tau and the Taylor coefficients, and checks
// the step-lattice support. The support window is limited by g's truncation;
// violations beyond it are undetectable.
MLForm to_ml_form(const PuiseuxSeries& g);

}  // namespace rasym
