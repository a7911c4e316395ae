#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "rasym/errors.hpp"
#include "rasym/rational.hpp"

namespace rasym {

// Arbitrary-precision float (MPFR, round-to-nearest). Binary operations
// produce a result at the wider of the two operand precisions, so precision
// choices stay explicit at the call sites that create values.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(long x, mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_si(v_, x, MPFR_RNDN); }
    Real(const Rational& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    // Decimal string, e.g. "1.1751774424585571398132856".
    Real(const std::string& dec, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        if (mpfr_set_str(v_, dec.c_str(), 10, MPFR_RNDN) != 0 && mpfr_nan_p(v_))
            throw SyntaxError("bad decimal literal '" + dec + "'", 0);
    }

    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 64); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    bool is_zero() const { return mpfr_zero_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    // Exponent e with |x| in [2^(e-1), 2^e); 0 for x == 0.
    long exp2() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

    friend Real operator+(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator-(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator*(const Real& a, const Real& b) {
        Real r(join(a, b));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(const Real& a, const Real& b) {
        if (b.is_zero()) throw DomainError("division by zero");
        Real r(join(a, b));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    Real abs() const {
        Real r(prec());
        mpfr_abs(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real sqrt() const {
        if (sign() < 0) throw DomainError("sqrt of a negative value");
        Real r(prec());
        mpfr_sqrt(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real exp() const {
        Real r(prec());
        mpfr_exp(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real log() const {
        if (sign() <= 0) throw DomainError("ln of a nonpositive value");
        Real r(prec());
        mpfr_log(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real log1p() const {
        Real r(prec());
        mpfr_log1p(r.v_, v_, MPFR_RNDN);
        return r;
    }
    Real pow(const Real& e) const {
        Real r(join(*this, e));
        mpfr_pow(r.v_, v_, e.v_, MPFR_RNDN);
        if (mpfr_nan_p(r.v_)) throw DomainError("pow with nonpositive base and fractional exponent");
        return r;
    }
    Real pow_int(long e) const {
        Real r(prec());
        mpfr_pow_si(r.v_, v_, e, MPFR_RNDN);
        return r;
    }
    // x^(num/den), x > 0 required when den != 1.
    Real pow_rational(const Rational& e, mpfr_prec_t prec_hint = 0) const {
        mpfr_prec_t p = prec_hint ? prec_hint : prec();
        if (rat_is_integer(e)) {
            Real r = pow_int(rat_to_long(e));
            return r.round_to(p);
        }
        if (sign() <= 0) throw DomainError("fractional power of a nonpositive value");
        Real ex(e, p + 32);
        Real base = round_to(p + 32);
        Real r(p);
        mpfr_pow(r.v_, base.v_, ex.v_, MPFR_RNDN);
        return r;
    }

    Real round_to(mpfr_prec_t p) const {
        Real r(p);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    // Decimal rendering with the requested number of significant digits.
    std::string to_decimal(std::size_t digits = 30) const {
        if (is_zero()) return "0";
        mpfr_exp_t e;
        char* s = mpfr_get_str(nullptr, &e, 10, digits, v_, MPFR_RNDN);
        std::string m(s);
        mpfr_free_str(s);
        std::string sign_part;
        if (!m.empty() && m[0] == '-') {
            sign_part = "-";
            m.erase(0, 1);
        }
        std::string out = sign_part;
        if (e <= 0 || static_cast<std::size_t>(e) > digits) {
            out += m.substr(0, 1) + "." + m.substr(1) + "e" + std::to_string(e - 1);
        } else {
            out += m.substr(0, static_cast<std::size_t>(e));
            if (static_cast<std::size_t>(e) < m.size()) out += "." + m.substr(static_cast<std::size_t>(e));
        }
        return out;
    }

  private:
    static mpfr_prec_t join(const Real& a, const Real& b) {
        return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
    }
    mpfr_t v_;
};

// Number of agreeing leading decimal digits between a and b, measured as
// floor(-log10(|a-b|/|a|)). Returns `cap` when the values coincide exactly.
inline long agreeing_digits(const Real& a, const Real& b, long cap) {
    Real d = (a - b).abs();
    if (d.is_zero()) return cap;
    if (a.is_zero()) return 0;
    Real rel = d / a.abs();
    Real l(64);
    mpfr_log10(l.raw(), rel.raw(), MPFR_RNDN);
    double digs = -l.to_double();
    if (digs <= 0) return 0;
    long n = static_cast<long>(std::floor(digs));
    return std::min(n, cap);
}

}  // namespace rasym
