#pragma once

#include <map>
#include <string>

#include "rasym/rational.hpp"

namespace rasym {

// Truncated local expansion at 0 in one variable: finitely many terms
// c_e * y^e with exact rational coefficients, exponents on the lattice
// (1/lattice)*Z and bounded below (negative exponents allowed, so 1/y fits).
//
// `trunc` is the knowledge bound: the series is known modulo O(y^trunc) and
// only exponents strictly below trunc are stored. Arithmetic propagates the
// weakest guaranteed bound instead of silently pretending full order.
class PuiseuxSeries {
  public:
    // Hard cap on the exponent lattice denominator; larger requirements are
    // treated as runaway inputs.
    static constexpr long kLatticeCap = 12;

    PuiseuxSeries() : lattice_(1), trunc_(rat(0)) {}
    PuiseuxSeries(long lattice, Rational trunc);

    static PuiseuxSeries zero(const Rational& trunc) { return PuiseuxSeries(1, trunc); }
    static PuiseuxSeries constant(const Rational& c, const Rational& trunc);
    static PuiseuxSeries monomial(const Rational& coeff, const Rational& exponent,
                                  const Rational& trunc);

    long lattice() const { return lattice_; }
    const Rational& trunc() const { return trunc_; }
    bool is_zero() const { return coef_.empty(); }
    const std::map<Rational, Rational>& terms() const { return coef_; }

    // Smallest exponent with a nonzero coefficient; trunc() for the zero series.
    Rational valuation() const;
    Rational coeff(const Rational& e) const;

    void set_coeff(const Rational& e, const Rational& c);
    PuiseuxSeries truncated(const Rational& new_trunc) const;

    std::string to_string(const std::string& var = "y") const;

    bool same_terms(const PuiseuxSeries& o) const { return coef_ == o.coef_; }

  private:
    void absorb_exponent(const Rational& e);

    std::map<Rational, Rational> coef_;
    long lattice_;
    Rational trunc_;
};

PuiseuxSeries p_add(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries p_sub(const PuiseuxSeries& a, const PuiseuxSeries& b);
PuiseuxSeries p_neg(const PuiseuxSeries& a);
PuiseuxSeries p_scale(const Rational& s, const PuiseuxSeries& a);
PuiseuxSeries p_mul(const PuiseuxSeries& a, const PuiseuxSeries& b);

// Reciprocal of c*y^v*(1 + h); the input's lowest-order coefficient must be
// nonzero (for v = 0 this is the usual unit inversion).
PuiseuxSeries p_invert_unit(const PuiseuxSeries& a);

// a^r for rational r. Requires a = c*y^v*(1 + h) with c an exact rational
// r-th power (c > 0) and v*r on a representable lattice.
PuiseuxSeries p_pow_rational(const PuiseuxSeries& a, const Rational& r);

// exp(a) and ln(1+a); both require valuation(a) > 0 so the composition with
// the Maclaurin series is well defined.
PuiseuxSeries p_exp(const PuiseuxSeries& a);
PuiseuxSeries p_log1p(const PuiseuxSeries& a);

// y := u^t substitution (exponents scale by t; used for root substitution).
PuiseuxSeries p_stretch(const PuiseuxSeries& a, long t);

}  // namespace rasym
