#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rasym/const_poly.hpp"
#include "rasym/rational.hpp"
#include "rasym/real.hpp"
#include "rasym/scale_factor.hpp"

namespace rasym {

namespace detail {

// Inner part of an asymptotic-scale series: map (m, l) -> poly meaning
// poly(C) * ln(k)^l * k^(-m), with m <= order kept.
using InnerTerms = std::map<std::pair<int, int>, ConstPoly>;

void inner_set(InnerTerms& t, int m, int l, ConstPoly p);
void inner_accum(InnerTerms& t, int m, int l, const ConstPoly& p);
InnerTerms inner_add(const InnerTerms& a, const InnerTerms& b);
InnerTerms inner_sub(const InnerTerms& a, const InnerTerms& b);
InnerTerms inner_scale(const Rational& s, const InnerTerms& a);
InnerTerms inner_mul(const InnerTerms& a, const InnerTerms& b, int order);
InnerTerms inner_pow(const InnerTerms& a, long n, int order);
// Multiplies by (1+1/k)^e expanded binomially.
InnerTerms inner_mul_binom(const InnerTerms& a, const Rational& e, int order);
// Substitutes k -> k+1 in the ln(k)^l * k^(-m) monomials (the k^r0 prefactor
// is handled separately by the caller).
InnerTerms inner_shift(const InnerTerms& a, int order);
// Reciprocal of a series with inner term (0,0) == 1.
InnerTerms inner_reciprocal(const InnerTerms& a, int order);

}  // namespace detail

// Truncated asymptotic-scale series in k:
//
//   value(k) = scale * k^r0 * sum_{m<=order, l<=m} terms[m,l] * ln(k)^l * k^(-m)
//
// with coefficients polynomial in the free constant. The single permitted
// irrational prefactor lives in `scale` as a factored prime product.
class AsymSeries {
  public:
    AsymSeries() : AsymSeries(ScaleFactor(), rat(0), 0) {}
    AsymSeries(ScaleFactor scale, Rational r0, int order)
        : scale_(std::move(scale)), r0_(std::move(r0)), order_(order) {}

    static AsymSeries unit(ScaleFactor scale, Rational r0, int order) {
        AsymSeries s(std::move(scale), std::move(r0), order);
        s.set_term(0, 0, ConstPoly(rat(1)));
        return s;
    }

    const ScaleFactor& scale() const { return scale_; }
    const Rational& r0() const { return r0_; }
    int order() const { return order_; }
    const detail::InnerTerms& terms() const { return terms_; }

    ConstPoly term(int m, int l) const;
    void set_term(int m, int l, ConstPoly p);

    // Largest log power present at inner order m.
    int max_log_power(int m) const;

    AsymSeries with_substituted_constant(const Rational& u, const Rational& v) const;

    bool is_one(int through_order) const;

    std::string to_string() const;

  private:
    friend AsymSeries a_mul(const AsymSeries&, const AsymSeries&);
    friend AsymSeries a_add(const AsymSeries&, const AsymSeries&);
    friend AsymSeries a_reciprocal(const AsymSeries&);
    friend AsymSeries a_pow_int(const AsymSeries&, long);
    friend AsymSeries a_shift(const AsymSeries&);

    ScaleFactor scale_;
    Rational r0_;
    int order_;
    detail::InnerTerms terms_;
};

AsymSeries a_mul(const AsymSeries& a, const AsymSeries& b);

// Sum of two series whose scales differ by a rational ratio and whose leading
// exponents differ by an integer (the result adopts the smaller r0's frame
// only when needed; the first operand's frame wins).
AsymSeries a_add(const AsymSeries& a, const AsymSeries& b);

AsymSeries a_reciprocal(const AsymSeries& a);
AsymSeries a_pow_int(const AsymSeries& a, long n);
AsymSeries a_shift(const AsymSeries& a);

// Numeric value at integer k >= 2. A value for the constant must be supplied
// whenever any coefficient still depends on it. `differentiate` evaluates
// d/dC of the series instead.
Real a_eval(const AsymSeries& s, long k, const std::optional<Real>& constant, mpfr_prec_t prec,
            bool differentiate = false);

// One displayed term of a scaled series: coefficient * ln(k)^l * k^kexp.
struct DisplayTerm {
    Rational kexp;
    int log_power;
    ConstPoly coeff;
};

// The series multiplied by report scale s, flattened to exact displayed
// terms. Requires s*scale to be rational; throws StructureError otherwise.
std::vector<DisplayTerm> scaled_display_terms(const AsymSeries& s, const ScaleFactor& report_scale);

std::string render_display(const std::vector<DisplayTerm>& terms, bool latex = false);

}  // namespace rasym
