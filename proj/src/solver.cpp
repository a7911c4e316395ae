#include "rasym/solver.hpp"

#include "rasym/errors.hpp"

namespace rasym {

using detail::InnerTerms;

namespace {

// Residual of the functional equation in the inner frame (the common
// prefactor lambda^(1/tau) k^(-1/tau) divided out):
//
//   (1+1/k)^(-1/tau) * Shift(1+S)  -  [(1+S) + sum_j a_j lambda^j k^-j (1+S)^(j*tau+1)]
//
// computed through inner order `ord`. Needs a_1..a_ord.
InnerTerms inner_residual(const MLForm& ml, const InnerTerms& s, int ord) {
    if (static_cast<long>(ml.a.size()) < ord)
        throw PrecisionError("order exhaustion: MLForm truncation provides only " +
                             std::to_string(ml.a.size()) + " coefficients, need " +
                             std::to_string(ord));
    InnerTerms lhs = detail::inner_mul_binom(detail::inner_shift(s, ord),
                                             Rational(-1, ml.tau), ord);
    InnerTerms rhs = s;
    Rational lam_pow(1);
    for (int j = 1; j <= ord; ++j) {
        lam_pow *= ml.lambda;
        const Rational& aj = ml.a[static_cast<std::size_t>(j - 1)];
        if (aj == 0) continue;
        InnerTerms p = detail::inner_pow(s, static_cast<long>(j) * ml.tau + 1, ord - j);
        Rational factor = aj * lam_pow;
        for (const auto& [key, poly] : p)
            if (key.first + j <= ord)
                detail::inner_accum(rhs, key.first + j, key.second, factor * poly);
    }
    return detail::inner_sub(lhs, rhs);
}

ConstPoly residual_at(const InnerTerms& r, int m, int l) {
    auto it = r.find({m, l});
    return it == r.end() ? ConstPoly() : it->second;
}

}  // namespace

AsymSeries solve_u_series(const MLForm& ml, int M) {
    if (M < 1 || M > 10) throw DomainError("expansion order must be in [1, 10]");
    if (static_cast<long>(ml.a.size()) < M + 1)
        throw PrecisionError("order exhaustion: MLForm truncation too short for order " +
                             std::to_string(M));

    InnerTerms s;
    detail::inner_set(s, 0, 0, ConstPoly(rat(1)));

    for (int m = 1; m <= M; ++m) {
        InnerTerms r = inner_residual(ml, s, m + 1);

        // Everything the previous stages already matched must have cancelled.
        for (const auto& [key, poly] : r)
            if (key.first <= m && !poly.is_zero())
                throw StructureError("inconsistent matching: residual survives at order " +
                                     std::to_string(key.first) + ", log power " +
                                     std::to_string(key.second));

        // Matching at inner order m+1, log power l, where the stage unknowns
        // c_{m,l} enter as (1-m) c_{m,l} + (l+1) c_{m,l+1}:
        if (m == 1) {
            // (1-m) vanishes: l = 0 determines c_{1,1}; any residual at a
            // positive log power would force l > m, i.e. a map outside the
            // supported class. c_{1,0} is the free constant.
            for (const auto& [key, poly] : r)
                if (key.first == 2 && key.second >= 1 && !poly.is_zero())
                    throw StructureError(
                        "extra degeneracy: log power bound violated at the first order");
            detail::inner_set(s, 1, 1, -residual_at(r, 2, 0));
            detail::inner_set(s, 1, 0, ConstPoly::symbol());
        } else {
            for (const auto& [key, poly] : r)
                if (key.first == m + 1 && key.second > m && !poly.is_zero())
                    throw StructureError("inconsistent matching: log power " +
                                         std::to_string(key.second) + " exceeds order " +
                                         std::to_string(m));
            Rational inv(1, m - 1);
            inv.canonicalize();
            ConstPoly next;  // c_{m, l+1}, zero for l = m
            for (int l = m; l >= 0; --l) {
                ConstPoly c = inv * (residual_at(r, m + 1, l) +
                                     Rational(l + 1) * next);
                detail::inner_set(s, m, l, c);
                next = std::move(c);
            }
        }
    }

    // By construction the residual vanishes identically through order M+1;
    // verify rather than trust the recurrence.
    InnerTerms check = inner_residual(ml, s, M + 1);
    for (const auto& [key, poly] : check)
        if (!poly.is_zero())
            throw StructureError("solver self-check failed: nonzero residual at order " +
                                 std::to_string(key.first));

    AsymSeries u(ScaleFactor::from_rational(ml.lambda).pow(rat(1, ml.tau)),
                 rat(-1, ml.tau), M);
    for (const auto& [key, poly] : s) {
        if (key.second > key.first && !poly.is_zero())
            throw StructureError("log power bound violated: l > m in solver output");
        u.set_term(key.first, key.second, poly);
    }
    return u;
}

std::pair<AsymSeries, AsymSeries> derive_xy_series(const AsymSeries& u, long t) {
    AsymSeries y = a_pow_int(u, t);
    AsymSeries x = a_reciprocal(y);
    return {std::move(y), std::move(x)};
}

AsymSeries apply_u_map(const MLForm& ml, const AsymSeries& u) {
    // The a_j term contributes from inner order j onward, so j <= order matters.
    if (static_cast<long>(ml.a.size()) < u.order())
        throw PrecisionError("order exhaustion: MLForm truncation too short to apply the map");
    AsymSeries acc = u;
    for (long j = 1; j <= u.order(); ++j) {
        const Rational& aj = ml.a[static_cast<std::size_t>(j - 1)];
        if (aj == 0) continue;
        AsymSeries term = a_pow_int(u, j * ml.tau + 1);
        AsymSeries scaled(term.scale(), term.r0(), term.order());
        for (const auto& [key, poly] : term.terms())
            scaled.set_term(key.first, key.second, aj * poly);
        acc = a_add(acc, scaled);
    }
    return acc;
}

NormalizedExpansion normalize_constant(const MLForm& ml, const AsymSeries& u_raw,
                                       const ScaleFactor& report_scale) {
    auto [y_raw, x_raw] = derive_xy_series(u_raw, ml.t);

    auto rho = (report_scale * x_raw.scale()).as_rational();
    if (!rho)
        throw StructureError("irrational report scale ratio " +
                             (report_scale * x_raw.scale()).to_string() +
                             "; only numeric extraction is possible with this scale");

    int slot_m = 0;
    for (int m = 1; m <= x_raw.order() && slot_m == 0; ++m) {
        for (int l = x_raw.max_log_power(m); l >= 1; --l)
            if (x_raw.term(m, l).depends_on_symbol())
                throw StructureError(
                    "constant first appears with nonzero log power; no log-free slot");
        if (x_raw.term(m, 0).depends_on_symbol()) slot_m = m;
    }
    if (slot_m == 0)
        throw StructureError("no constant-bearing log-free slot found through order " +
                             std::to_string(x_raw.order()));

    ConstPoly slot = x_raw.term(slot_m, 0);
    if (slot.degree() != 1)
        throw StructureError("extra degeneracy: constant enters nonlinearly at its slot");
    Rational a = *rho * slot.coeff(1);
    Rational b = *rho * slot.coeff(0);
    // Displayed coefficient is a*kappa + b =: C, so kappa = (C - b)/a.
    Rational u_sub = Rational(1) / a;
    Rational v_sub = Rational(-b) / a;

    NormalizedExpansion n;
    n.ml = ml;
    n.report_scale = report_scale;
    n.rho = *rho;
    n.u = u_raw.with_substituted_constant(u_sub, v_sub);
    n.y = y_raw.with_substituted_constant(u_sub, v_sub);
    n.x = x_raw.with_substituted_constant(u_sub, v_sub);
    n.c_slot_m = slot_m;
    n.c_slot_kexp = x_raw.r0() - Rational(slot_m);

    ConstPoly b1p = n.x.term(1, 1);
    n.b1 = *rho * b1p.constant_value();

    if (!(*rho * n.x.term(slot_m, 0) == ConstPoly::symbol()))
        throw StructureError("normalization self-check failed: slot coefficient is not C");
    if (!a_mul(n.y, n.x).is_one(n.y.order()))
        throw StructureError("normalization self-check failed: y*x != 1");

    // Human-readable limit formula: C = lim k^e ( s*x_k - leading terms ).
    auto display = scaled_display_terms(n.x, report_scale);
    std::vector<DisplayTerm> subtracted;
    for (const auto& t : display) {
        if (t.kexp > n.c_slot_kexp || (t.kexp == n.c_slot_kexp && t.log_power > 0))
            subtracted.push_back({t.kexp, t.log_power, -t.coeff});
    }
    std::string sx = report_scale.is_one() ? "x_k" : report_scale.to_string() + "*x_k";
    std::string body = sx;
    if (!subtracted.empty()) {
        std::string rest = render_display(subtracted);
        body += (rest[0] == '-' ? " - " + rest.substr(1) : " + " + rest);
    }
    Rational e = -n.c_slot_kexp;
    if (e == 0) n.definition = "C = lim_{k->inf} ( " + body + " )";
    else n.definition = "C = lim_{k->inf} k^(" + rat_to_string(e) + ") * ( " + body + " )";
    return n;
}

}  // namespace rasym
