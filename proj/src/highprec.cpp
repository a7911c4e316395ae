#include "rasym/highprec.hpp"

#include <algorithm>
#include <cmath>

#include "rasym/errors.hpp"

namespace rasym {

namespace {

long digit_cap(long precision) {
    return static_cast<long>(std::floor(static_cast<double>(precision) * 0.30102999566398));
}

struct OrbitPass {
    std::vector<Real> values;  // one per requested index
    double err_ulps = 0;
};

OrbitPass run_orbit(const Expr& f, const Rational& y0, const std::vector<long>& Ks,
                    long precision) {
    if (Ks.empty() || Ks.front() < 1) throw DomainError("orbit needs indices >= 1");
    if (precision < 64) throw PrecisionError("orbit precision must be at least 64 bits");
    if (precision < 128 && Ks.back() >= 100000)
        throw PrecisionError("budget exceeded: need >= 128 bits for K >= 1e5");
    if (y0 <= 0) throw DomainError("y0 must be positive");

    OrbitPass out;
    mpfr_prec_t p = static_cast<mpfr_prec_t>(precision);
    Real y(y0, p);
    Real one(1, p);
    std::size_t next = 0;
    for (long k = 1; k <= Ks.back(); ++k) {
        Real x = one / y;
        Expr::Evaluated fx = f.eval_checked(x, p);
        if (fx.value.sign() <= 0)
            throw DomainError("orbit left the positive domain at index " + std::to_string(k));
        Real y_next = one / fx.value;
        if (!(y_next < y))
            throw DomainError("orbit is not strictly decreasing at index " + std::to_string(k) +
                              "; map outside the supported class");
        y = std::move(y_next);
        out.err_ulps += fx.err_ulps + 1.0;
        while (next < Ks.size() && Ks[next] == k) {
            out.values.push_back(y);
            ++next;
        }
    }
    if (next != Ks.size()) throw DomainError("orbit indices must be ascending and distinct");
    return out;
}

}  // namespace

std::vector<OrbitSample> orbit_samples(const Expr& f, const Rational& y0,
                                       const std::vector<long>& Ks, long precision) {
    OrbitPass lo = run_orbit(f, y0, Ks, precision);
    OrbitPass hi = run_orbit(f, y0, Ks, precision + 64);
    std::vector<OrbitSample> out;
    out.reserve(Ks.size());
    for (std::size_t i = 0; i < Ks.size(); ++i) {
        OrbitSample s;
        s.K = Ks[i];
        s.y_K = lo.values[i];
        s.y_K_hi = hi.values[i];
        s.precision = precision;
        s.err_ulps = lo.err_ulps;
        s.agree_digits = agreeing_digits(s.y_K, s.y_K_hi, digit_cap(precision));
        out.push_back(std::move(s));
    }
    return out;
}

OrbitSample iterate_map(const Expr& f, const Rational& y0, long K, long precision) {
    return orbit_samples(f, y0, {K}, precision).front();
}

Real newton_constant(const AsymSeries& y_series, long K, const Real& y_K, long precision,
                     int* iters_out) {
    mpfr_prec_t guard = static_cast<mpfr_prec_t>(precision) + 64;
    Real target = y_K.round_to(guard);

    auto F = [&](const Real& c) { return a_eval(y_series, K, c, guard) - target; };
    auto Fp = [&](const Real& c) { return a_eval(y_series, K, c, guard, true); };

    // Linear seed: with C = 0 the series is affine to dominant order.
    Real c(0, guard);
    Real f0 = F(c);
    Real fp0 = Fp(c);
    if (fp0.is_zero()) throw StructureError("series does not depend on the constant");
    c = -(f0 / fp0);

    long stop_exp = -(precision - 8);
    Real prev_absf(0, guard);
    int grew = 0;
    for (int it = 1; it <= 50; ++it) {
        Real f = F(c);
        Real absf = f.abs();
        if (it > 1 && !prev_absf.is_zero() && absf > prev_absf + prev_absf) {
            if (++grew >= 2)
                throw StructureError("|F| not decreasing: series/sample mismatch");
        } else {
            grew = 0;
        }
        prev_absf = absf;
        Real step = f / Fp(c);
        c -= step;
        if (step.is_zero() || step.exp2() < stop_exp) {
            if (iters_out) *iters_out = it;
            return c.round_to(static_cast<mpfr_prec_t>(precision));
        }
    }
    throw PrecisionError("Newton did not converge in 50 iterations");
}

ConstantReport solve_constant(const NormalizedExpansion& exp, const OrbitSample& sample,
                              const std::optional<OrbitSample>& sample_2k) {
    if (exp.y.order() < 2) throw DomainError("need expansion order M >= 2 to extract C");
    ConstantReport r;
    r.K = sample.K;
    r.M = exp.y.order();
    r.precision = sample.precision;
    r.C = newton_constant(exp.y, sample.K, sample.y_K, sample.precision, &r.newton_iters);
    r.diag.C_hiP = newton_constant(exp.y, sample.K, sample.y_K_hi, sample.precision + 64);

    long cap = digit_cap(sample.precision);
    r.diag.agree_P = agreeing_digits(r.C, r.diag.C_hiP, cap);
    long agree = r.diag.agree_P;
    if (sample_2k) {
        if (sample_2k->K != 2 * sample.K || sample_2k->precision != sample.precision)
            throw DomainError("second sample must be (2K, same precision)");
        r.diag.C_2K = newton_constant(exp.y, sample_2k->K, sample_2k->y_K, sample.precision);
        r.diag.agree_K = agreeing_digits(r.C, r.diag.C_2K, cap);
        agree = std::min(agree, r.diag.agree_K);
    }
    r.digits_agreed = std::clamp<long>(agree - 2, 0, cap);
    return r;
}

ProductResult product_r(const Expr& f, long terms, long precision) {
    if (terms < 1) throw DomainError("product needs at least one factor");
    mpfr_prec_t w = static_cast<mpfr_prec_t>(precision) + 32;
    Real x(1, w);
    Real log_acc(0, w);
    for (long k = 0; k < terms; ++k) {
        Real u = Real(1, w) / (x * x);
        Real term = u.log1p();
        mpfr_mul_2si(term.raw(), term.raw(), -(k + 1), MPFR_RNDN);
        log_acc += term;
        if (k + 1 < terms) x = f.eval(x, w);
    }
    ProductResult out;
    out.terms = terms;
    out.value = log_acc.exp().round_to(static_cast<mpfr_prec_t>(precision));

    // tail on ln r <= 2^-terms * ln 2; rounding slop ~ terms ulp
    Real tail(1, 64);
    mpfr_mul_2si(tail.raw(), tail.raw(), -std::min<long>(terms, 1000000), MPFR_RNDN);
    Real ln2(64);
    mpfr_const_log2(ln2.raw(), MPFR_RNDN);
    Real slop(static_cast<long>(terms + 4), 64);
    mpfr_mul_2si(slop.raw(), slop.raw(), -static_cast<long>(precision), MPFR_RNDN);
    out.error_bound = out.value * (tail * ln2 + slop);
    return out;
}

}  // namespace rasym
