#include "rasym/asym_series.hpp"

#include <algorithm>

#include "rasym/errors.hpp"

namespace rasym {

namespace detail {

void inner_set(InnerTerms& t, int m, int l, ConstPoly p) {
    if (p.is_zero()) t.erase({m, l});
    else t[{m, l}] = std::move(p);
}

void inner_accum(InnerTerms& t, int m, int l, const ConstPoly& p) {
    if (p.is_zero()) return;
    auto it = t.find({m, l});
    if (it == t.end()) {
        t[{m, l}] = p;
        return;
    }
    it->second += p;
    if (it->second.is_zero()) t.erase(it);
}

InnerTerms inner_add(const InnerTerms& a, const InnerTerms& b) {
    InnerTerms r = a;
    for (const auto& [k, p] : b) inner_accum(r, k.first, k.second, p);
    return r;
}

InnerTerms inner_sub(const InnerTerms& a, const InnerTerms& b) {
    InnerTerms r = a;
    for (const auto& [k, p] : b) inner_accum(r, k.first, k.second, -p);
    return r;
}

InnerTerms inner_scale(const Rational& s, const InnerTerms& a) {
    InnerTerms r;
    if (s == 0) return r;
    for (const auto& [k, p] : a) r[k] = s * p;
    return r;
}

InnerTerms inner_mul(const InnerTerms& a, const InnerTerms& b, int order) {
    InnerTerms r;
    for (const auto& [ka, pa] : a) {
        if (ka.first > order) continue;
        for (const auto& [kb, pb] : b) {
            int m = ka.first + kb.first;
            if (m > order) continue;
            inner_accum(r, m, ka.second + kb.second, pa * pb);
        }
    }
    return r;
}

InnerTerms inner_pow(const InnerTerms& a, long n, int order) {
    InnerTerms r;
    inner_set(r, 0, 0, ConstPoly(rat(1)));
    InnerTerms base = a;
    while (n > 0) {
        if (n & 1) r = inner_mul(r, base, order);
        n >>= 1;
        if (n) base = inner_mul(base, base, order);
    }
    return r;
}

InnerTerms inner_mul_binom(const InnerTerms& a, const Rational& e, int order) {
    InnerTerms r;
    for (const auto& [k, p] : a) {
        for (int j = 0; k.first + j <= order; ++j) {
            Rational c = rat_binom(e, static_cast<unsigned>(j));
            if (c == 0) continue;
            inner_accum(r, k.first + j, k.second, c * p);
        }
    }
    return r;
}

namespace {

// Powers of D = ln(1 + 1/k) as coefficient vectors in 1/k, up to k^-order.
std::vector<std::vector<Rational>> log1p_powers(int max_power, int order) {
    std::vector<std::vector<Rational>> dp(static_cast<std::size_t>(max_power) + 1);
    dp[0].assign(static_cast<std::size_t>(order) + 1, rat(0));
    dp[0][0] = rat(1);
    if (max_power == 0) return dp;
    std::vector<Rational> d(static_cast<std::size_t>(order) + 1, rat(0));
    for (int j = 1; j <= order; ++j) d[static_cast<std::size_t>(j)] = rat(j % 2 ? 1 : -1, j);
    dp[1] = d;
    for (int i = 2; i <= max_power; ++i) {
        std::vector<Rational> v(static_cast<std::size_t>(order) + 1, rat(0));
        for (int x = 1; x <= order; ++x)
            for (int y = 1; x + y <= order; ++y)
                v[static_cast<std::size_t>(x + y)] += dp[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(x)] * d[static_cast<std::size_t>(y)];
        dp[static_cast<std::size_t>(i)] = std::move(v);
    }
    return dp;
}

Rational choose(int n, int k) {
    return rat_binom(Rational(n), static_cast<unsigned>(k));
}

}  // namespace

InnerTerms inner_shift(const InnerTerms& a, int order) {
    int max_l = 0;
    for (const auto& [k, p] : a) max_l = std::max(max_l, k.second);
    auto dp = log1p_powers(max_l, order);
    InnerTerms r;
    for (const auto& [key, p] : a) {
        auto [m, l] = key;
        if (m > order) continue;
        // ln(k+1)^l = sum_i C(l,i) ln(k)^i D^(l-i);  (k+1)^-m = k^-m (1+1/k)^-m
        for (int i = 0; i <= l; ++i) {
            const auto& dpow = dp[static_cast<std::size_t>(l - i)];
            Rational cli = choose(l, i);
            for (int e = 0; m + e <= order; ++e) {
                if (e >= static_cast<int>(dpow.size()) || dpow[static_cast<std::size_t>(e)] == 0) continue;
                for (int j = 0; m + e + j <= order; ++j) {
                    Rational b = rat_binom(Rational(-m), static_cast<unsigned>(j));
                    if (b == 0) continue;
                    inner_accum(r, m + e + j, i, (cli * dpow[static_cast<std::size_t>(e)] * b) * p);
                }
            }
        }
    }
    return r;
}

InnerTerms inner_reciprocal(const InnerTerms& a, int order) {
    auto it = a.find({0, 0});
    if (it == a.end() || !(it->second == ConstPoly(rat(1))))
        throw StructureError("reciprocal needs a series in normal form (leading inner term 1)");
    InnerTerms t = a;
    t.erase({0, 0});
    InnerTerms neg = inner_scale(rat(-1), t);
    InnerTerms acc;
    inner_set(acc, 0, 0, ConstPoly(rat(1)));
    InnerTerms pw = neg;
    for (int j = 1; j <= order && !pw.empty(); ++j) {
        acc = inner_add(acc, pw);
        pw = inner_mul(pw, neg, order);
    }
    return acc;
}

}  // namespace detail

using detail::InnerTerms;

ConstPoly AsymSeries::term(int m, int l) const {
    auto it = terms_.find({m, l});
    return it == terms_.end() ? ConstPoly() : it->second;
}

void AsymSeries::set_term(int m, int l, ConstPoly p) {
    if (m > order_) return;
    detail::inner_set(terms_, m, l, std::move(p));
}

int AsymSeries::max_log_power(int m) const {
    int best = -1;
    for (const auto& [k, p] : terms_)
        if (k.first == m) best = std::max(best, k.second);
    return best;
}

AsymSeries AsymSeries::with_substituted_constant(const Rational& u, const Rational& v) const {
    AsymSeries r(scale_, r0_, order_);
    for (const auto& [k, p] : terms_) r.set_term(k.first, k.second, p.substitute_affine(u, v));
    return r;
}

bool AsymSeries::is_one(int through_order) const {
    if (!scale_.is_one() || r0_ != 0) return false;
    for (const auto& [k, p] : terms_) {
        if (k.first > through_order) continue;
        if (k.first == 0 && k.second == 0) {
            if (!(p == ConstPoly(rat(1)))) return false;
        } else if (!p.is_zero()) {
            return false;
        }
    }
    return !(term(0, 0).is_zero());
}

namespace {

int min_inner_order(const AsymSeries& s) {
    int v = s.order() + 1;
    for (const auto& [k, p] : s.terms()) v = std::min(v, k.first);
    return v;
}

}  // namespace

AsymSeries a_mul(const AsymSeries& a, const AsymSeries& b) {
    int va = min_inner_order(a), vb = min_inner_order(b);
    int order = std::min(a.order() + vb, b.order() + va);
    AsymSeries r(a.scale() * b.scale(), a.r0() + b.r0(), order);
    r.terms_ = detail::inner_mul(a.terms(), b.terms(), order);
    return r;
}

AsymSeries a_add(const AsymSeries& a, const AsymSeries& b) {
    // Align b into a's frame: scales must differ by a rational factor and
    // leading exponents by a nonnegative integer.
    ScaleFactor ratio_sf = b.scale() * a.scale().inverse();
    auto ratio = ratio_sf.as_rational();
    if (!ratio) throw StructureError("cannot add series whose scales differ irrationally");
    Rational dr = a.r0() - b.r0();
    if (!rat_is_integer(dr) || dr < 0)
        throw StructureError("cannot add series: leading exponent mismatch " + rat_to_string(dr));
    long shift = rat_to_long(dr);
    AsymSeries r(a.scale(), a.r0(), std::min<long>(a.order(), b.order() + shift));
    r.terms_ = a.terms();
    for (const auto& [k, p] : b.terms())
        if (k.first + shift <= r.order())
            detail::inner_accum(r.terms_, k.first + static_cast<int>(shift), k.second, *ratio * p);
    return r;
}

AsymSeries a_reciprocal(const AsymSeries& a) {
    AsymSeries r(a.scale().inverse(), -a.r0(), a.order());
    r.terms_ = detail::inner_reciprocal(a.terms(), a.order());
    return r;
}

AsymSeries a_pow_int(const AsymSeries& a, long n) {
    if (n < 0) return a_pow_int(a_reciprocal(a), -n);
    AsymSeries r(a.scale().pow(Rational(n)), a.r0() * Rational(n), a.order());
    r.terms_ = detail::inner_pow(a.terms(), n, a.order());
    return r;
}

AsymSeries a_shift(const AsymSeries& a) {
    AsymSeries r(a.scale(), a.r0(), a.order());
    r.terms_ = detail::inner_mul_binom(detail::inner_shift(a.terms(), a.order()), a.r0(), a.order());
    return r;
}

Real a_eval(const AsymSeries& s, long k, const std::optional<Real>& constant, mpfr_prec_t prec,
            bool differentiate) {
    if (k < 2) throw DomainError("series evaluation needs k >= 2");
    mpfr_prec_t w = prec + 64;
    std::optional<Real> c;
    if (constant) c = constant->round_to(w);
    Real kk(k, w);
    Real lk = kk.log();
    int max_l = 0, max_m = 0;
    for (const auto& [key, p] : s.terms()) {
        max_l = std::max(max_l, key.second);
        max_m = std::max(max_m, key.first);
    }
    std::vector<Real> lkp(static_cast<std::size_t>(max_l) + 1, Real(1, w));
    for (int i = 1; i <= max_l; ++i) lkp[static_cast<std::size_t>(i)] = lkp[static_cast<std::size_t>(i - 1)] * lk;
    Real kinv = Real(1, w) / kk;
    std::vector<Real> kmp(static_cast<std::size_t>(max_m) + 1, Real(1, w));
    for (int i = 1; i <= max_m; ++i) kmp[static_cast<std::size_t>(i)] = kmp[static_cast<std::size_t>(i - 1)] * kinv;

    Real acc(0, w);
    for (const auto& [key, p] : s.terms()) {
        ConstPoly q = differentiate ? p.derivative() : p;
        if (q.is_zero()) continue;
        Real coeff(0, w);
        if (q.depends_on_symbol()) {
            if (!c) throw DomainError("series coefficients depend on the unresolved constant C");
            coeff = q.eval(*c);
        } else {
            coeff = Real(q.coeff(0), w);
        }
        acc += coeff * lkp[static_cast<std::size_t>(key.second)] * kmp[static_cast<std::size_t>(key.first)];
    }
    Real result = acc * kk.pow_rational(s.r0(), w) * s.scale().value(w);
    return result.round_to(prec);
}

std::vector<DisplayTerm> scaled_display_terms(const AsymSeries& s, const ScaleFactor& report_scale) {
    auto rho = (report_scale * s.scale()).as_rational();
    if (!rho)
        throw StructureError("irrational report scale ratio: " +
                             (report_scale * s.scale()).to_string());
    std::vector<DisplayTerm> out;
    for (const auto& [key, p] : s.terms()) {
        ConstPoly c = *rho * p;
        if (c.is_zero()) continue;
        out.push_back({s.r0() - Rational(key.first), key.second, std::move(c)});
    }
    std::sort(out.begin(), out.end(), [](const DisplayTerm& a, const DisplayTerm& b) {
        if (a.kexp != b.kexp) return a.kexp > b.kexp;
        return a.log_power > b.log_power;
    });
    return out;
}

namespace {

std::string k_power_str(const Rational& e, bool latex) {
    if (e == 0) return "";
    if (e == 1) return "k";
    if (latex) return "k^{" + rat_to_string(e) + "}";
    return "k^(" + rat_to_string(e) + ")";
}

std::string log_power_str(int l, bool latex) {
    if (l == 0) return "";
    std::string base = latex ? "\\ln(k)" : "ln(k)";
    if (l == 1) return base;
    if (latex) return base + "^{" + std::to_string(l) + "}";
    return base + "^" + std::to_string(l);
}

}  // namespace

std::string render_display(const std::vector<DisplayTerm>& terms, bool latex) {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& t : terms) {
        std::string coeff;
        bool negative = false;
        if (t.coeff.is_constant()) {
            Rational c = t.coeff.coeff(0);
            negative = c < 0;
            Rational m = negative ? Rational(-c) : c;
            bool bare_term = t.log_power == 0 && t.kexp == 0;
            if (m != 1 || bare_term) {
                if (latex && !rat_is_integer(m))
                    coeff = "\\frac{" + m.get_num().get_str() + "}{" + m.get_den().get_str() + "}";
                else
                    coeff = rat_to_string(m);
            }
        } else {
            std::string inner = t.coeff.to_string("C");
            coeff = latex ? "\\left(" + inner + "\\right)" : "(" + inner + ")";
        }
        std::string monom;
        std::string lp = log_power_str(t.log_power, latex);
        std::string kp = k_power_str(t.kexp, latex);
        if (latex && t.kexp < 0) {
            std::string num = lp.empty() ? "1" : lp;
            monom = "\\frac{" + num + "}{" + k_power_str(Rational(-t.kexp), true) + "}";
        } else {
            monom = lp;
            if (!kp.empty()) monom += (monom.empty() ? "" : latex ? "\\," : "*") + kp;
        }
        std::string piece = coeff;
        if (!monom.empty()) piece += (piece.empty() ? "" : latex ? "\\," : "*") + monom;
        if (piece.empty()) piece = "1";
        if (out.empty()) out = negative ? "-" + piece : piece;
        else out += (negative ? " - " : " + ") + piece;
    }
    return out;
}

}  // namespace rasym
