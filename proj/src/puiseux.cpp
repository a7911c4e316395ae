#include "rasym/puiseux.hpp"

#include <algorithm>

#include "rasym/errors.hpp"

namespace rasym {

namespace {

long lattice_of(const Rational& e) {
    if (!e.get_den().fits_slong_p()) throw StructureError("exponent denominator overflow");
    return e.get_den().get_si();
}

}  // namespace

PuiseuxSeries::PuiseuxSeries(long lattice, Rational trunc) : lattice_(lattice), trunc_(std::move(trunc)) {
    if (lattice_ < 1 || lattice_ > kLatticeCap)
        throw StructureError("exponent lattice denominator " + std::to_string(lattice_) +
                             " outside [1, " + std::to_string(kLatticeCap) + "]");
}

PuiseuxSeries PuiseuxSeries::constant(const Rational& c, const Rational& trunc) {
    PuiseuxSeries s(1, trunc);
    s.set_coeff(rat(0), c);
    return s;
}

PuiseuxSeries PuiseuxSeries::monomial(const Rational& coeff, const Rational& exponent,
                                      const Rational& trunc) {
    PuiseuxSeries s(lattice_of(exponent), trunc);
    s.set_coeff(exponent, coeff);
    return s;
}

Rational PuiseuxSeries::valuation() const {
    return coef_.empty() ? trunc_ : coef_.begin()->first;
}

Rational PuiseuxSeries::coeff(const Rational& e) const {
    auto it = coef_.find(e);
    return it == coef_.end() ? rat(0) : it->second;
}

void PuiseuxSeries::absorb_exponent(const Rational& e) {
    long l = lcm_long(lattice_, lattice_of(e));
    if (l > kLatticeCap)
        throw StructureError("exponent lattice refinement exceeds cap " + std::to_string(kLatticeCap));
    lattice_ = l;
}

void PuiseuxSeries::set_coeff(const Rational& e, const Rational& c) {
    if (e >= trunc_) return;  // beyond what this series claims to know
    if (c == 0) {
        coef_.erase(e);
        return;
    }
    absorb_exponent(e);
    coef_[e] = c;
}

PuiseuxSeries PuiseuxSeries::truncated(const Rational& new_trunc) const {
    PuiseuxSeries r(lattice_, std::min(trunc_, new_trunc));
    for (const auto& [e, c] : coef_) {
        if (e >= r.trunc_) break;
        r.coef_[e] = c;
    }
    return r;
}

std::string PuiseuxSeries::to_string(const std::string& var) const {
    std::string s;
    for (const auto& [e, c] : coef_) {
        bool neg = c < 0;
        if (!s.empty()) s += neg ? " - " : " + ";
        else if (neg) s += "-";
        Rational m = neg ? Rational(-c) : c;
        std::string term;
        if (e == 0) term = rat_to_string(m);
        else {
            if (m != 1) term = rat_to_string(m) + "*";
            term += var;
            if (e != 1) term += "^(" + rat_to_string(e) + ")";
        }
        s += term;
    }
    if (s.empty()) s = "0";
    return s + " + O(" + var + "^(" + rat_to_string(trunc_) + "))";
}

PuiseuxSeries p_add(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    PuiseuxSeries r(lcm_long(a.lattice(), b.lattice()), std::min(a.trunc(), b.trunc()));
    for (const auto& [e, c] : a.terms()) r.set_coeff(e, c);
    for (const auto& [e, c] : b.terms()) r.set_coeff(e, r.coeff(e) + c);
    return r;
}

PuiseuxSeries p_neg(const PuiseuxSeries& a) { return p_scale(rat(-1), a); }

PuiseuxSeries p_sub(const PuiseuxSeries& a, const PuiseuxSeries& b) { return p_add(a, p_neg(b)); }

PuiseuxSeries p_scale(const Rational& s, const PuiseuxSeries& a) {
    PuiseuxSeries r(a.lattice(), a.trunc());
    if (s == 0) return r;
    for (const auto& [e, c] : a.terms()) r.set_coeff(e, s * c);
    return r;
}

PuiseuxSeries p_mul(const PuiseuxSeries& a, const PuiseuxSeries& b) {
    // Product is known modulo O(y^t) with t = min(trunc_a + val_b, trunc_b + val_a).
    Rational t = std::min(a.trunc() + b.valuation(), b.trunc() + a.valuation());
    PuiseuxSeries r(lcm_long(a.lattice(), b.lattice()), t);
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            Rational e = ea + eb;
            if (e >= t) continue;
            r.set_coeff(e, r.coeff(e) + ca * cb);
        }
    return r;
}

namespace {

// a = c*y^v*(1+h); returns (c, v, h) where h has positive valuation.
struct UnitParts {
    Rational c;
    Rational v;
    PuiseuxSeries h;
};

UnitParts split_unit(const PuiseuxSeries& a) {
    if (a.is_zero()) throw DomainError("series has no leading term (zero through truncation)");
    Rational v = a.valuation();
    Rational c = a.coeff(v);
    PuiseuxSeries h(a.lattice(), a.trunc() - v);
    for (const auto& [e, coeff] : a.terms()) {
        if (e == v) continue;
        h.set_coeff(e - v, coeff / c);
    }
    return {c, v, h};
}

// sum_{j>=0} coeff(j)*h^j truncated by h's own bound; h must have positive
// valuation so the sum is finite.
template <typename CoeffFn>
PuiseuxSeries unit_compose(const PuiseuxSeries& h, CoeffFn coeff, const Rational& c0) {
    PuiseuxSeries acc = PuiseuxSeries::constant(c0, h.trunc());
    if (h.is_zero()) return acc;
    if (h.valuation() <= 0) throw DomainError("composition needs positive valuation");
    Rational v = h.valuation();
    PuiseuxSeries pw = h;
    for (unsigned j = 1; !pw.is_zero(); ++j) {
        acc = p_add(acc, p_scale(coeff(j), pw));
        if (v * Rational(static_cast<long>(j) + 1) >= h.trunc()) break;
        pw = p_mul(pw, h).truncated(h.trunc());
    }
    return acc.truncated(h.trunc());
}

}  // namespace

PuiseuxSeries p_invert_unit(const PuiseuxSeries& a) {
    UnitParts u = split_unit(a);
    // 1/(1+h) = sum (-1)^j h^j
    PuiseuxSeries inv = unit_compose(u.h, [](unsigned j) { return (j % 2) ? rat(-1) : rat(1); }, rat(1));
    PuiseuxSeries r = p_scale(Rational(1) / u.c, inv);
    PuiseuxSeries shifted = PuiseuxSeries::monomial(rat(1), -u.v, r.trunc() - u.v);
    return p_mul(shifted, r);
}

PuiseuxSeries p_pow_rational(const PuiseuxSeries& a, const Rational& r) {
    if (r == 0) {
        UnitParts u = split_unit(a);  // still reject zero base
        (void)u;
        return PuiseuxSeries::constant(rat(1), a.trunc() - a.valuation());
    }
    UnitParts u = split_unit(a);
    Rational c_r;
    if (rat_is_integer(r)) {
        c_r = rat_pow_int(u.c, rat_to_long(r));
    } else {
        if (u.c < 0) throw DomainError("fractional power of a series with negative leading coefficient");
        auto root = rat_root_exact(u.c, static_cast<unsigned long>(r.get_den().get_ui()));
        if (!root)
            throw DomainError("irrational constant: leading coefficient " + rat_to_string(u.c) +
                              " has no exact rational root of index " + r.get_den().get_str());
        c_r = rat_pow_int(*root, rat_to_long(Rational(r.get_num())));
    }
    PuiseuxSeries unit = unit_compose(u.h, [&](unsigned j) { return rat_binom(r, j); }, rat(1));
    PuiseuxSeries scaled = p_scale(c_r, unit);
    Rational e = u.v * r;  // may refine the lattice; monomial() validates the cap
    PuiseuxSeries shifted = PuiseuxSeries::monomial(rat(1), e, scaled.trunc() + e);
    return p_mul(shifted, scaled);
}

PuiseuxSeries p_exp(const PuiseuxSeries& a) {
    if (a.is_zero()) return PuiseuxSeries::constant(rat(1), a.trunc());
    if (a.valuation() <= 0)
        throw DomainError("exp of a series with a constant (or pole) part is not rational");
    Rational inv_fact(1);
    return unit_compose(a, [&](unsigned j) {
        inv_fact /= Rational(static_cast<long>(j));
        return inv_fact;
    }, rat(1));
}

PuiseuxSeries p_log1p(const PuiseuxSeries& a) {
    if (a.is_zero()) return PuiseuxSeries::zero(a.trunc());
    if (a.valuation() <= 0)
        throw DomainError("ln(1+s) needs s with positive valuation");
    PuiseuxSeries r = unit_compose(a, [](unsigned j) {
        Rational c(1, static_cast<long>(j));
        c.canonicalize();
        return (j % 2) ? c : Rational(-c);
    }, rat(0));
    return r;
}

PuiseuxSeries p_stretch(const PuiseuxSeries& a, long t) {
    if (t < 1) throw DomainError("stretch factor must be positive");
    PuiseuxSeries r(1, a.trunc() * Rational(t));
    for (const auto& [e, c] : a.terms()) r.set_coeff(e * Rational(t), c);
    return r;
}

}  // namespace rasym
