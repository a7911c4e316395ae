#include "rasym/reciprocity.hpp"

#include "rasym/errors.hpp"

namespace rasym {

namespace {

PuiseuxSeries expand_node(const Expr::NodePtr& n, const PuiseuxSeries& base) {
    using Kind = Expr::Kind;
    switch (n->kind) {
        case Kind::Var: return base;
        case Kind::Lit: return PuiseuxSeries::constant(n->lit, base.trunc());
        case Kind::Add: return p_add(expand_node(n->a, base), expand_node(n->b, base));
        case Kind::Sub: return p_sub(expand_node(n->a, base), expand_node(n->b, base));
        case Kind::Neg: return p_neg(expand_node(n->a, base));
        case Kind::Mul: return p_mul(expand_node(n->a, base), expand_node(n->b, base));
        case Kind::Div: {
            PuiseuxSeries num = expand_node(n->a, base);
            PuiseuxSeries den = expand_node(n->b, base);
            return p_mul(num, p_invert_unit(den));
        }
        case Kind::Pow: return p_pow_rational(expand_node(n->a, base), n->exponent);
        case Kind::Sqrt: return p_pow_rational(expand_node(n->a, base), rat(1, 2));
        case Kind::Exp: {
            // exp(c + s) is rational only for c = 0; ln(1+s) likewise needs
            // the unit constant 1. Both are recognized structurally here.
            PuiseuxSeries arg = expand_node(n->a, base);
            return p_exp(arg);
        }
        case Kind::Ln: {
            PuiseuxSeries arg = expand_node(n->a, base);
            if (arg.coeff(rat(0)) != 1)
                throw DomainError("ln of a series whose constant term is not 1");
            PuiseuxSeries shifted = p_sub(arg, PuiseuxSeries::constant(rat(1), arg.trunc()));
            return p_log1p(shifted);
        }
    }
    throw Error("unreachable expression kind");
}

}  // namespace

PuiseuxSeries expand_expr(const Expr& f, const PuiseuxSeries& base) {
    return expand_node(f.root(), base);
}

PuiseuxSeries derive_g_series(const Expr& f, int order) {
    if (order < 2) throw DomainError("derive_g_series needs order >= 2");
    // Working truncation with retry: pole arithmetic can lower the guaranteed
    // order, so widen until the requested order is certified.
    for (int attempt = 0, w = order + 2; attempt < 8; ++attempt, w = w * 2) {
        PuiseuxSeries x_of_y = PuiseuxSeries::monomial(rat(1), rat(-1), Rational(w));
        PuiseuxSeries f_at = expand_node(f.root(), x_of_y);
        if (f_at.is_zero() || f_at.valuation() != -1)
            throw StructureError(
                "not reciprocal-normalizable: f(1/y) is not y^(-1) * (unit series); leading "
                "exponent is " +
                (f_at.is_zero() ? std::string("absent") : rat_to_string(f_at.valuation())));
        PuiseuxSeries g = p_invert_unit(f_at);
        if (g.trunc() >= Rational(order)) return g.truncated(Rational(order));
    }
    throw PrecisionError("series truncation did not stabilize while deriving g");
}

MLForm to_ml_form(const PuiseuxSeries& g) {
    if (g.is_zero() || g.valuation() != 1)
        throw StructureError("map series must have leading exponent 1");
    // t := lcm of exponent denominators over the truncated support.
    long t = 1;
    for (const auto& [e, c] : g.terms()) t = lcm_long(t, static_cast<long>(e.get_den().get_si()));
    if (t > PuiseuxSeries::kLatticeCap)
        throw StructureError("support lattice denominator exceeds cap");

    PuiseuxSeries u_map = g;
    if (t > 1) u_map = p_pow_rational(p_stretch(g, t), rat(1, t));
    if (u_map.coeff(rat(1)) != 1)
        throw StructureError("leading coefficient != 1 (map outside the supported class)");

    MLForm m;
    m.t = t;
    m.u_map = u_map;

    // First correction term fixes tau; everything after must sit on
    // {1, tau+1, 2*tau+1, ...}.
    Rational first_corr(0);
    for (const auto& [e, c] : u_map.terms()) {
        if (e == 1) continue;
        first_corr = e;
        break;
    }
    if (first_corr == 0)
        throw StructureError("map has no correction term within the truncation window");
    if (!rat_is_integer(first_corr))
        throw StructureError("support off step-lattice: fractional exponent after substitution");
    m.tau = rat_to_long(first_corr) - 1;
    if (m.tau < 1) throw StructureError("correction exponent must exceed 1");

    long max_j = 0;
    for (const auto& [e, c] : u_map.terms()) {
        if (e == 1) continue;
        if (!rat_is_integer(e))
            throw StructureError("support off step-lattice: fractional exponent after substitution");
        long ee = rat_to_long(e);
        if ((ee - 1) % m.tau != 0)
            throw StructureError("support off step-lattice: exponent " + std::to_string(ee) +
                                 " not on {1, tau+1, 2tau+1, ...} with tau = " +
                                 std::to_string(m.tau));
        max_j = std::max(max_j, (ee - 1) / m.tau);
    }
    // Coefficients up to the last slot certified by the truncation bound.
    Rational bound = u_map.trunc();
    long certified = 0;
    while (Rational((certified + 1) * m.tau + 1) < bound) ++certified;
    long count = std::max(max_j, certified);
    m.a.reserve(static_cast<std::size_t>(count));
    for (long j = 1; j <= count; ++j) m.a.push_back(u_map.coeff(Rational(j * m.tau + 1)));

    if (m.a.empty() || m.a[0] >= 0)
        throw StructureError("a1 >= 0: the reciprocal-side method does not apply");
    m.lambda = Rational(-1) / (Rational(m.tau) * m.a[0]);
    return m;
}

}  // namespace rasym
