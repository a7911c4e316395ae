#pragma once

#include <optional>
#include <vector>

#include "rasym/expr.hpp"
#include "rasym/solver.hpp"

namespace rasym {

// One high-precision orbit value y_K, with the precision-shifted rerun that
// backs the reported agreement.
struct OrbitSample {
    long K = 0;
    Real y_K;
    Real y_K_hi;  // same index, precision + 64 bits
    long precision = 0;
    double err_ulps = 0;  // accumulated per-step rounding estimate
    long agree_digits = 0;
};

// Iterates y_{k+1} = 1/f(1/y_k) from y0. Values stay in (0, 1] on the maps
// this library targets; strict monotone decrease is checked along the way.
OrbitSample iterate_map(const Expr& f, const Rational& y0, long K, long precision);

// Same orbit, sampled at several indices in one pass (ascending Ks).
std::vector<OrbitSample> orbit_samples(const Expr& f, const Rational& y0,
                                       const std::vector<long>& Ks, long precision);

struct ConstantDiagnostics {
    Real C_2K;   // re-solve against y_{2K}
    Real C_hiP;  // re-solve at precision + 64
    long agree_K = 0;
    long agree_P = 0;
};

struct ConstantReport {
    Real C;
    long digits_agreed = 0;
    long K = 0;
    int M = 0;
    long precision = 0;
    int newton_iters = 0;
    ConstantDiagnostics diag;
};

// Newton's method on F(C) = series(K; C) - y_K. The series residual is
// evaluated with 64 guard bits so the |dC| < 2^-(P-8) stopping rule is
// reachable; y_K itself stays the P-bit orbit value.
Real newton_constant(const AsymSeries& y_series, long K, const Real& y_K, long precision,
                     int* iters_out = nullptr);

// Full extraction with K-shifted and precision-shifted cross-runs.
// `sample_2k` must hold y_{2K} at the same precision.
ConstantReport solve_constant(const NormalizedExpansion& exp, const OrbitSample& sample,
                              const std::optional<OrbitSample>& sample_2k);

struct ProductResult {
    Real value;
    Real error_bound;  // truncation tail plus rounding slop
    long terms = 0;
};

// The infinite product r = prod_{k>=0} (1 + 1/x_k^2)^(1/2^(k+1)) over the
// x-orbit of f (x_0 = 1), truncated after `terms` factors. The tail on ln r
// is bounded by 2^-terms * ln 2 because the exponents halve and 1/x_k^2 <= 1.
ProductResult product_r(const Expr& f, long terms, long precision);

}  // namespace rasym
