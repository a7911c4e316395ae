#include "rasym/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <future>
#include <sstream>
#include <thread>

#include "rasym/errors.hpp"

namespace rasym {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point from) {
    return std::chrono::duration<double>(Clock::now() - from).count();
}

// Derive g with enough terms for the requested order: to_ml_form needs
// a_1..a_(M+1), i.e. u-support up to (M+2)*tau + 1, which lives at
// y-exponent ((M+2)*tau + 1)/t. t and tau are only known after a first pass.
MLForm derive_ml(const Expr& f, int M, PuiseuxSeries* g_out) {
    int order = std::max(14, 3 * M);
    for (int attempt = 0; attempt < 4; ++attempt) {
        PuiseuxSeries g = derive_g_series(f, order);
        MLForm ml = to_ml_form(g);
        if (static_cast<long>(ml.a.size()) >= M + 1) {
            if (g_out) *g_out = g;
            return ml;
        }
        long needed = ((M + 2) * ml.tau + 1) / ml.t + 3;
        if (needed <= order) needed = order * 2;
        order = static_cast<int>(needed);
    }
    throw PrecisionError("could not reach the requested expansion order for this map");
}

std::string fixture_mismatch(const std::vector<DisplayTerm>& got,
                             const std::vector<DisplayTerm>& want, const Rational& through) {
    auto key = [](const DisplayTerm& t) {
        return rat_to_string(t.kexp) + "|" + std::to_string(t.log_power);
    };
    std::ostringstream os;
    for (const auto& w : want) {
        bool found = false;
        for (const auto& g : got)
            if (g.kexp == w.kexp && g.log_power == w.log_power) {
                found = true;
                if (!(g.coeff == w.coeff))
                    os << "coefficient at (" << key(w) << "): got " << g.coeff.to_string()
                       << ", expected " << w.coeff.to_string() << "; ";
            }
        if (!found) os << "missing term at (" << key(w) << "); ";
    }
    for (const auto& g : got) {
        if (g.kexp < through) continue;
        bool listed = false;
        for (const auto& w : want)
            if (g.kexp == w.kexp && g.log_power == w.log_power) listed = true;
        if (!listed)
            os << "unexpected term at (" << key(g) << "): " << g.coeff.to_string() << "; ";
    }
    return os.str();
}

FixtureCheck check_display(const std::string& what, const AsymSeries& series,
                           const DisplayFixture& fx) {
    FixtureCheck c{what, false, ""};
    try {
        auto got = scaled_display_terms(series, fx.scale);
        std::string detail = fixture_mismatch(got, fx.terms, fx.through);
        c.pass = detail.empty();
        c.detail = detail;
    } catch (const Error& e) {
        c.detail = e.what();
    }
    return c;
}

long match_digits(const Real& value, const std::string& expected, long precision) {
    Real want(expected, static_cast<mpfr_prec_t>(precision));
    long cap = static_cast<long>(expected.size());  // cannot certify beyond the printed digits
    return agreeing_digits(value, want, cap);
}

}  // namespace

Real eval_derived_expr(const std::string& expr, const Real& c) {
    Expr e = Expr::parse(expr, {"C"});
    return e.eval(c, c.prec());
}

ScaleFactor parse_scale_text(const std::string& text) {
    ScaleFactor s;
    auto strip = [](std::string t) {
        while (!t.empty() && (t.front() == ' ' || t.front() == '(')) t.erase(t.begin());
        while (!t.empty() && (t.back() == ' ' || t.back() == ')')) t.pop_back();
        return t;
    };
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i < text.size() && text[i] == '(') ++depth;
        if (i < text.size() && text[i] == ')') --depth;
        if (i == text.size() || (text[i] == '*' && depth == 0)) {
            std::string piece = text.substr(start, i - start);
            start = i + 1;
            int d2 = 0;
            std::size_t caret = std::string::npos;
            for (std::size_t k = 0; k < piece.size(); ++k) {
                if (piece[k] == '(') ++d2;
                if (piece[k] == ')') --d2;
                if (piece[k] == '^' && d2 == 0) {
                    caret = k;
                    break;
                }
            }
            Rational base, e(1);
            if (caret == std::string::npos) base = rat_from_string(strip(piece));
            else {
                base = rat_from_string(strip(piece.substr(0, caret)));
                e = rat_from_string(strip(piece.substr(caret + 1)));
            }
            if (base != 1) s = s * ScaleFactor::from_power(base, e);
        }
    }
    return s;
}

NormalizedExpansion solve_symbolic(const CaseConfig& cfg) {
    Expr f = Expr::parse(cfg.f_text);
    MLForm ml = derive_ml(f, cfg.M, nullptr);
    AsymSeries u = solve_u_series(ml, cfg.M);
    return normalize_constant(ml, u, cfg.report_scale);
}

CaseReport run_case(const CaseConfig& cfg, const RunOverrides& ovr) {
    auto t0 = Clock::now();
    CaseReport r;
    r.name = cfg.name;
    r.f_text = cfg.f_text;
    long K = ovr.K.value_or(cfg.K);
    long precision = ovr.precision.value_or(cfg.precision);
    long min_digits = ovr.min_digits.value_or(cfg.expected ? cfg.expected->min_digits : 20);

    std::string stage = "parse";
    try {
        Expr f = Expr::parse(cfg.f_text);

        stage = "derive_g_series/to_ml_form";
        r.ml = derive_ml(f, cfg.M, nullptr);

        stage = "solve_u_series";
        AsymSeries u = solve_u_series(r.ml, cfg.M);

        stage = "normalize_constant";
        r.expansion = normalize_constant(r.ml, u, cfg.report_scale);

        if (!ovr.skip_numeric) {
            stage = "iterate_map";
            auto samples = orbit_samples(f, cfg.y0, {K, 2 * K}, precision);

            stage = "solve_constant";
            r.constant = solve_constant(*r.expansion, samples[0], samples[1]);

            stage = "derived_outputs";
            for (const auto& d : cfg.derived) {
                DerivedOutput out{d.label, d.expr,
                                  eval_derived_expr(d.expr, r.constant->C), std::nullopt};
                if (d.expected) {
                    out.matched_digits = match_digits(out.value, *d.expected, precision);
                    r.fixtures.push_back({"derived " + d.label,
                                          *out.matched_digits >= min_digits,
                                          "matched " + std::to_string(*out.matched_digits) +
                                              " digits (need " + std::to_string(min_digits) + ")"});
                }
                r.derived.push_back(std::move(out));
            }
        }

        stage = "fixtures";
        if (cfg.expected) {
            if (cfg.expected->c_digits && r.constant) {
                r.c_matched_digits = match_digits(r.constant->C, *cfg.expected->c_digits, precision);
                r.fixtures.push_back({"constant", *r.c_matched_digits >= min_digits,
                                      "matched " + std::to_string(*r.c_matched_digits) +
                                          " digits (need " + std::to_string(min_digits) + ")"});
            }
            if (cfg.expected->y_display)
                r.fixtures.push_back(check_display("y-series", r.expansion->y,
                                                   *cfg.expected->y_display));
            if (cfg.expected->x_display)
                r.fixtures.push_back(check_display("x-series", r.expansion->x,
                                                   *cfg.expected->x_display));
        }
    } catch (const Error& e) {
        r.stage_error = stage + ": " + e.what();
    }
    r.seconds = elapsed(t0);
    return r;
}

RunbookResult run_book(const Runbook& book, int jobs, const RunOverrides& ovr) {
    auto t0 = Clock::now();
    RunbookResult result;
    result.reports.resize(book.cases.size());

    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                                : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(book.cases.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= book.cases.size()) return;
            result.reports[i] = run_case(book.cases[i], ovr);
        }
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 0; w < workers; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& fut : pool) fut.get();

    for (const auto& cc : book.cross_checks) {
        if (ovr.skip_numeric) break;  // cross checks compare numeric constants
        FixtureCheck check{"cross " + cc.label, false, ""};
        const CaseReport* a = nullptr;
        const CaseReport* b = nullptr;
        for (const auto& rep : result.reports) {
            if (rep.name == cc.a_case) a = &rep;
            if (rep.name == cc.b_case) b = &rep;
        }
        if (!a || !b || !a->constant || !b->constant) {
            check.detail = "referenced case missing or failed";
        } else {
            try {
                Real va = eval_derived_expr(cc.a_expr, a->constant->C);
                Real vb = eval_derived_expr(cc.b_expr, b->constant->C);
                long cap = static_cast<long>(
                    std::min(a->constant->precision, b->constant->precision) * 3 / 10);
                long digits = agreeing_digits(va, vb, cap);
                long need = ovr.min_digits.value_or(cc.min_digits);
                check.pass = digits >= need;
                check.detail = "agree to " + std::to_string(digits) + " digits (need " +
                               std::to_string(need) + ")";
            } catch (const Error& e) {
                check.detail = e.what();
            }
        }
        result.cross_results.push_back(std::move(check));
    }
    result.seconds = elapsed(t0);
    return result;
}

// ---- JSON ------------------------------------------------------------------

namespace {

DisplayFixture display_fixture_from_json(const Json& j) {
    DisplayFixture f;
    f.scale = scale_from_json(j.value("scale", Json()));
    f.through = rational_from_json(j.at("through"));
    for (const auto& t : j.at("terms")) {
        if (!t.is_array() || t.size() != 3)
            throw SyntaxError("fixture terms are [kexp, logpow, poly] triples", 0);
        std::vector<Rational> coeffs;
        for (const auto& c : t[2]) coeffs.push_back(rational_from_json(c));
        f.terms.push_back({rational_from_json(t[0]), t[1].get<int>(),
                           ConstPoly::from_coeffs(coeffs)});
    }
    return f;
}

Json display_fixture_to_json(const DisplayFixture& f) {
    Json terms = Json::array();
    for (const auto& t : f.terms) {
        Json coeffs = Json::array();
        for (const auto& c : t.coeff.coeffs()) coeffs.push_back(rat_to_string(c));
        terms.push_back(Json::array({rat_to_string(t.kexp), t.log_power, coeffs}));
    }
    return Json{{"scale", scale_to_json(f.scale)},
                {"through", rat_to_string(f.through)},
                {"terms", terms}};
}

}  // namespace

CaseConfig case_config_from_json(const Json& j) {
    CaseConfig c;
    c.name = j.at("name").get<std::string>();
    c.f_text = j.at("f").get<std::string>();
    if (j.contains("y0")) c.y0 = rational_from_json(j.at("y0"));
    if (j.contains("scale")) c.report_scale = scale_from_json(j.at("scale"));
    c.M = j.value("M", 6);
    c.K = j.value("K", 1000000L);
    c.precision = j.value("precision", 256L);
    if (j.contains("derived"))
        for (const auto& d : j.at("derived")) {
            DerivedSpec spec;
            spec.label = d.at("label").get<std::string>();
            spec.expr = d.value("expr", spec.label);
            if (d.contains("expected")) spec.expected = d.at("expected").get<std::string>();
            c.derived.push_back(std::move(spec));
        }
    if (j.contains("expected")) {
        const Json& e = j.at("expected");
        CaseExpect ex;
        if (e.contains("C")) ex.c_digits = e.at("C").get<std::string>();
        ex.min_digits = e.value("min_digits", 20L);
        if (e.contains("y_display")) ex.y_display = display_fixture_from_json(e.at("y_display"));
        if (e.contains("x_display")) ex.x_display = display_fixture_from_json(e.at("x_display"));
        c.expected = std::move(ex);
    }
    return c;
}

Json case_config_to_json(const CaseConfig& c) {
    Json j{{"name", c.name}, {"f", c.f_text}, {"y0", rat_to_string(c.y0)},
           {"scale", scale_to_json(c.report_scale)}, {"M", c.M}, {"K", c.K},
           {"precision", c.precision}};
    if (!c.derived.empty()) {
        Json d = Json::array();
        for (const auto& spec : c.derived) {
            Json e{{"label", spec.label}, {"expr", spec.expr}};
            if (spec.expected) e["expected"] = *spec.expected;
            d.push_back(std::move(e));
        }
        j["derived"] = std::move(d);
    }
    if (c.expected) {
        Json e;
        if (c.expected->c_digits) e["C"] = *c.expected->c_digits;
        e["min_digits"] = c.expected->min_digits;
        if (c.expected->y_display) e["y_display"] = display_fixture_to_json(*c.expected->y_display);
        if (c.expected->x_display) e["x_display"] = display_fixture_to_json(*c.expected->x_display);
        j["expected"] = std::move(e);
    }
    return j;
}

Runbook runbook_from_json(const Json& j) {
    Runbook b;
    for (const auto& c : j.at("cases")) b.cases.push_back(case_config_from_json(c));
    if (j.contains("cross_checks"))
        for (const auto& c : j.at("cross_checks"))
            b.cross_checks.push_back({c.at("label").get<std::string>(),
                                      c.at("a_case").get<std::string>(),
                                      c.at("a_expr").get<std::string>(),
                                      c.at("b_case").get<std::string>(),
                                      c.at("b_expr").get<std::string>(),
                                      c.value("min_digits", 20L)});
    return b;
}

Runbook load_runbook(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open runbook file " + path);
    Json j;
    in >> j;
    return runbook_from_json(j);
}

Json case_report_to_json(const CaseReport& r) {
    Json j{{"name", r.name}, {"f", r.f_text}, {"pass", r.pass()}, {"seconds", r.seconds}};
    if (!r.stage_error.empty()) {
        j["error"] = r.stage_error;
        return j;
    }
    j["ml_form"] = mlform_to_json(r.ml);
    if (r.expansion) {
        j["definition"] = r.expansion->definition;
        j["rho"] = rat_to_string(r.expansion->rho);
        j["b1"] = rat_to_string(r.expansion->b1);
        j["series"] = Json{{"u", series_to_json(r.expansion->u)},
                           {"y", series_to_json(r.expansion->y)},
                           {"x", series_to_json(r.expansion->x)}};
    }
    if (r.constant) {
        Json c{{"C", r.constant->C.to_decimal(40)},
               {"digits_agreed", r.constant->digits_agreed},
               {"K", r.constant->K},
               {"M", r.constant->M},
               {"precision", r.constant->precision},
               {"newton_iters", r.constant->newton_iters},
               {"diagnostics",
                Json{{"C_2K", r.constant->diag.C_2K.to_decimal(40)},
                     {"C_hiP", r.constant->diag.C_hiP.to_decimal(40)},
                     {"agree_K", r.constant->diag.agree_K},
                     {"agree_P", r.constant->diag.agree_P}}}};
        if (r.c_matched_digits) c["matched_digits"] = *r.c_matched_digits;
        j["constant"] = std::move(c);
    }
    if (!r.derived.empty()) {
        Json d = Json::array();
        for (const auto& out : r.derived) {
            Json e{{"label", out.label}, {"value", out.value.to_decimal(30)}};
            if (out.matched_digits) e["matched_digits"] = *out.matched_digits;
            d.push_back(std::move(e));
        }
        j["derived"] = std::move(d);
    }
    if (!r.fixtures.empty()) {
        Json fx = Json::array();
        for (const auto& f : r.fixtures)
            fx.push_back(Json{{"what", f.what}, {"pass", f.pass}, {"detail", f.detail}});
        j["fixtures"] = std::move(fx);
    }
    return j;
}

Json runbook_result_to_json(const RunbookResult& r) {
    Json reports = Json::array();
    for (const auto& rep : r.reports) reports.push_back(case_report_to_json(rep));
    Json cross = Json::array();
    for (const auto& c : r.cross_results)
        cross.push_back(Json{{"what", c.what}, {"pass", c.pass}, {"detail", c.detail}});
    return Json{{"pass", r.pass()}, {"seconds", r.seconds}, {"cases", reports},
                {"cross_checks", cross}};
}

std::string runbook_summary_table(const RunbookResult& r) {
    std::ostringstream os;
    os << "case          status   C (25 digits)                digits  fixtures  seconds\n";
    for (const auto& rep : r.reports) {
        char line[220];
        std::string cval = rep.constant ? rep.constant->C.to_decimal(26) : "-";
        std::string digs = rep.constant ? std::to_string(rep.constant->digits_agreed) : "-";
        int fx_pass = 0;
        for (const auto& f : rep.fixtures) fx_pass += f.pass ? 1 : 0;
        std::string fx = std::to_string(fx_pass) + "/" + std::to_string(rep.fixtures.size());
        std::snprintf(line, sizeof(line), "%-13s %-8s %-28s %-7s %-9s %7.1f\n", rep.name.c_str(),
                      rep.pass() ? "ok" : "FAIL", cval.c_str(), digs.c_str(), fx.c_str(),
                      rep.seconds);
        os << line;
        if (!rep.stage_error.empty()) os << "    error: " << rep.stage_error << "\n";
        for (const auto& f : rep.fixtures)
            if (!f.pass) os << "    FAIL " << f.what << ": " << f.detail << "\n";
    }
    for (const auto& c : r.cross_results)
        os << (c.pass ? "ok   " : "FAIL ") << c.what << ": " << c.detail << "\n";
    os << (r.pass() ? "runbook: all checks passed" : "runbook: FAILURES present") << " ("
       << static_cast<long>(r.seconds) << " s)\n";
    return os.str();
}

}  // namespace rasym
