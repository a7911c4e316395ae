#pragma once

#include <map>
#include <optional>
#include <string>

#include "rasym/rational.hpp"
#include "rasym/real.hpp"

namespace rasym {

// Formal product of distinct primes raised to rational exponents. This is
// the only place an irrational number (such as lambda^(1/tau)) is allowed to
// live; the series algebra itself stays over Q.
class ScaleFactor {
  public:
    ScaleFactor() = default;

    static ScaleFactor one() { return ScaleFactor(); }

    static ScaleFactor from_rational(const Rational& q) {
        if (q <= 0) throw DomainError("scale factor must be positive");
        ScaleFactor s;
        for (auto [p, e] : factor_positive(q.get_num()))
            s.f_[p] += Rational(static_cast<long>(e));
        for (auto [p, e] : factor_positive(q.get_den()))
            s.f_[p] -= Rational(static_cast<long>(e));
        s.trim();
        return s;
    }

    // base^exponent with a rational base, e.g. (3/2)^(1/3).
    static ScaleFactor from_power(const Rational& base, const Rational& exponent) {
        return from_rational(base).pow(exponent);
    }

    ScaleFactor pow(const Rational& e) const {
        ScaleFactor s;
        for (const auto& [p, x] : f_) s.f_[p] = x * e;
        s.trim();
        return s;
    }

    ScaleFactor inverse() const { return pow(rat(-1)); }

    friend ScaleFactor operator*(const ScaleFactor& a, const ScaleFactor& b) {
        ScaleFactor s = a;
        for (const auto& [p, x] : b.f_) s.f_[p] += x;
        s.trim();
        return s;
    }

    bool is_one() const { return f_.empty(); }

    bool operator==(const ScaleFactor& o) const { return f_ == o.f_; }

    // Exact rational value when every exponent is an integer.
    std::optional<Rational> as_rational() const {
        Rational r(1);
        for (const auto& [p, e] : f_) {
            if (!rat_is_integer(e)) return std::nullopt;
            r *= rat_pow_int(Rational(static_cast<long>(p)), rat_to_long(e));
        }
        return r;
    }

    Real value(mpfr_prec_t prec) const {
        Real r(1, prec + 32);
        for (const auto& [p, e] : f_)
            r *= Real(static_cast<long>(p), prec + 32).pow_rational(e, prec + 32);
        return r.round_to(prec);
    }

    const std::map<unsigned long, Rational>& factors() const { return f_; }

    std::string to_string() const {
        if (f_.empty()) return "1";
        std::string s;
        for (const auto& [p, e] : f_) {
            if (!s.empty()) s += "*";
            s += std::to_string(p);
            if (e != 1) s += "^(" + rat_to_string(e) + ")";
        }
        return s;
    }

  private:
    void trim() {
        for (auto it = f_.begin(); it != f_.end();)
            it = (it->second == 0) ? f_.erase(it) : std::next(it);
    }
    std::map<unsigned long, Rational> f_;
};

}  // namespace rasym
