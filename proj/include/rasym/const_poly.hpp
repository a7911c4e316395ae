#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "rasym/rational.hpp"
#include "rasym/real.hpp"

namespace rasym {

// Polynomial in the expansion's one formal constant, with exact rational
// coefficients. Before normalization the symbol means the solver's internal
// kappa; after normalization it means the reported constant C.
class ConstPoly {
  public:
    ConstPoly() = default;
    ConstPoly(const Rational& c) : c_{c} { trim(); }  // NOLINT: implicit by design
    ConstPoly(std::initializer_list<Rational> cs) : c_(cs) { trim(); }
    static ConstPoly symbol() { return ConstPoly({rat(0), rat(1)}); }
    static ConstPoly from_coeffs(std::vector<Rational> cs) {
        ConstPoly p;
        p.c_ = std::move(cs);
        p.trim();
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool depends_on_symbol() const { return c_.size() > 1; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : rat(0); }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational constant_value() const {
        if (depends_on_symbol()) throw DomainError("coefficient still depends on the constant");
        return coeff(0);
    }

    friend ConstPoly operator+(const ConstPoly& a, const ConstPoly& b) {
        ConstPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), rat(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
        r.trim();
        return r;
    }
    friend ConstPoly operator-(const ConstPoly& a, const ConstPoly& b) {
        ConstPoly r;
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), rat(0));
        for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) - b.coeff(i);
        r.trim();
        return r;
    }
    friend ConstPoly operator*(const ConstPoly& a, const ConstPoly& b) {
        if (a.is_zero() || b.is_zero()) return ConstPoly();
        ConstPoly r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, rat(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        r.trim();
        return r;
    }
    friend ConstPoly operator*(const Rational& s, const ConstPoly& p) {
        ConstPoly r = p;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }
    ConstPoly operator-() const { return rat(-1) * *this; }
    ConstPoly& operator+=(const ConstPoly& o) { return *this = *this + o; }
    ConstPoly& operator-=(const ConstPoly& o) { return *this = *this - o; }
    bool operator==(const ConstPoly& o) const { return c_ == o.c_; }

    ConstPoly derivative() const {
        ConstPoly r;
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.c_.push_back(Rational(static_cast<long>(i)) * c_[i]);
        r.trim();
        return r;
    }

    // p(sym) -> p(u*sym + v); used to renormalize kappa into C.
    ConstPoly substitute_affine(const Rational& u, const Rational& v) const {
        ConstPoly result;
        ConstPoly arg({v, u});
        for (std::size_t i = c_.size(); i-- > 0;) result = result * arg + ConstPoly(c_[i]);
        return result;
    }

    Real eval(const Real& x) const {
        Real acc(0, x.prec());
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + Real(c_[i], x.prec());
        return acc;
    }

    std::string to_string(const std::string& sym = "C") const {
        if (is_zero()) return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            Rational a = c_[i];
            bool neg = a < 0;
            if (!s.empty()) s += neg ? " - " : " + ";
            else if (neg) s += "-";
            Rational m = neg ? Rational(-a) : a;
            std::string mag = rat_to_string(m);
            if (i == 0) s += mag;
            else {
                if (m != 1) s += mag + "*";
                s += sym;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace rasym
