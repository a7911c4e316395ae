#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "rasym/errors.hpp"
#include "rasym/runner.hpp"

using namespace rasym;

namespace {

constexpr int kExitFailure = 1;   // fixtures or checks failed
constexpr int kExitUsage = 2;     // bad flags or config
constexpr int kExitMath = 3;      // domain/structure/precision errors

void write_json(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

CaseConfig config_from_flags(const std::string& f_text, const std::string& scale, int order,
                             long K, long precision, const std::string& y0,
                             const std::vector<std::string>& derived) {
    CaseConfig cfg;
    cfg.name = "cli";
    cfg.f_text = f_text;
    cfg.report_scale = parse_scale_text(scale);
    cfg.M = order;
    cfg.K = K;
    cfg.precision = precision;
    cfg.y0 = rat_from_string(y0);
    for (const auto& d : derived) cfg.derived.push_back({d, d, std::nullopt});
    return cfg;
}

void print_symbolic(const NormalizedExpansion& n, const ScaleFactor& s, bool latex) {
    std::cout << "u map: " << n.ml.u_map.to_string("u") << "\n";
    std::cout << "ML form: t=" << n.ml.t << " tau=" << n.ml.tau
              << " lambda=" << rat_to_string(n.ml.lambda) << " a = [";
    for (std::size_t i = 0; i < std::min<std::size_t>(n.ml.a.size(), 8); ++i)
        std::cout << (i ? ", " : "") << rat_to_string(n.ml.a[i]);
    std::cout << (n.ml.a.size() > 8 ? ", ...]\n" : "]\n");

    ScaleFactor y_scale = n.y.scale().as_rational() ? ScaleFactor() : n.y.scale().inverse();
    std::string y_prefix = y_scale.is_one() ? "y_k" : y_scale.to_string() + "*y_k";
    std::string x_prefix = s.is_one() ? "x_k" : s.to_string() + "*x_k";
    std::cout << y_prefix << " ~ " << render_display(scaled_display_terms(n.y, y_scale), latex)
              << "\n";
    std::cout << x_prefix << " ~ " << render_display(scaled_display_terms(n.x, s), latex) << "\n";
    std::cout << n.definition << "\n";
}

int do_solve(const CaseConfig& cfg, const std::string& json_path) {
    CaseReport rep = run_case(cfg);
    if (!rep.stage_error.empty()) {
        std::cerr << "error at " << rep.stage_error << "\n";
        return kExitMath;
    }
    print_symbolic(*rep.expansion, cfg.report_scale, false);
    const ConstantReport& c = *rep.constant;
    std::cout << "\nC = " << c.C.to_decimal(static_cast<std::size_t>(c.digits_agreed) + 2)
              << "   (digits agreed: " << c.digits_agreed << ", K=" << c.K << ", M=" << c.M
              << ", precision=" << c.precision << " bits, newton iters=" << c.newton_iters
              << ")\n";
    std::cout << "  C(2K) agrees to " << c.diag.agree_K << " digits; C(P+64) agrees to "
              << c.diag.agree_P << " digits\n";
    for (const auto& d : rep.derived)
        std::cout << "  " << d.label << " = " << d.value.to_decimal(26) << "\n";
    if (!json_path.empty()) write_json(json_path, case_report_to_json(rep));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Asymptotic expansions and constants of recurrences x_{k+1} = f(x_k)"};
    app.require_subcommand(1);

    std::string f_text, scale = "1", y0 = "1", json_path;
    int order = 6;
    long K = 1000000, precision = 256, terms = 80;
    std::vector<std::string> derived;
    bool latex = false;
    int jobs = 0;
    long min_digits_override = 0;
    bool symbolic_only = false;
    std::string runbook_path;

    auto* solve = app.add_subcommand("solve", "derive the expansion and extract C numerically");
    solve->add_option("--f", f_text, "map expression, e.g. 'sqrt(x + x^2)'")->required();
    solve->add_option("--scale", scale, "report scale s, e.g. '2^(1/2)'");
    solve->add_option("--order", order, "expansion order M (inner, default 6)");
    solve->add_option("--K", K, "orbit index (default 1e6)");
    solve->add_option("--precision", precision, "working precision in bits (default 256)")
        ->envname("RASYM_PRECISION");
    solve->add_option("--y0", y0, "initial value y_0 (default 1)");
    solve->add_option("--derived", derived, "derived output expression in C, e.g. '2*(C-1)'");
    solve->add_option("--json", json_path, "write the full report as JSON");

    auto* series = app.add_subcommand("series", "symbolic expansion only");
    series->add_option("--f", f_text)->required();
    series->add_option("--scale", scale);
    series->add_option("--order", order);
    series->add_flag("--latex", latex, "render series as LaTeX");
    series->add_option("--json", json_path);

    auto* derive_cmd = app.add_subcommand("derive", "reciprocal map g and its normalized form");
    derive_cmd->add_option("--f", f_text)->required();
    derive_cmd->add_option("--order", order);

    auto* runbook = app.add_subcommand("runbook", "run every case of a fixture file");
    runbook->add_option("file", runbook_path, "runbook JSON")->required();
    runbook->add_option("--jobs", jobs, "parallel cases (default: hardware)");
    runbook->add_option("--json", json_path, "write the aggregate report as JSON");
    long k_override = 0, prec_override = 0;
    runbook->add_option("--K", k_override, "override K for every case");
    runbook->add_option("--precision", prec_override, "override precision for every case");
    runbook->add_option("--min-digits", min_digits_override, "override required digits");
    runbook->add_flag("--symbolic", symbolic_only, "skip orbits; series fixtures only");

    auto* product = app.add_subcommand("product-r", "infinite product over the add-the-reciprocal orbit");
    product->add_option("--terms", terms, "number of factors (default 80)");
    long product_prec = 128;
    product->add_option("--precision", product_prec, "bits (default 128)")
        ->envname("RASYM_PRECISION");
    std::string product_f = "x + 1/x";
    product->add_option("--f", product_f, "orbit map (default 'x + 1/x')");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (solve->parsed())
            return do_solve(config_from_flags(f_text, scale, order, K, precision, y0, derived),
                            json_path);

        if (series->parsed()) {
            CaseConfig cfg = config_from_flags(f_text, scale, order, K, precision, y0, {});
            NormalizedExpansion n = solve_symbolic(cfg);
            print_symbolic(n, cfg.report_scale, latex);
            if (!json_path.empty())
                write_json(json_path, Json{{"u", series_to_json(n.u)},
                                           {"y", series_to_json(n.y)},
                                           {"x", series_to_json(n.x)},
                                           {"definition", n.definition}});
            return 0;
        }

        if (derive_cmd->parsed()) {
            Expr f = Expr::parse(f_text);
            PuiseuxSeries g = derive_g_series(f, std::max(14, 3 * order));
            std::cout << "g(y) = " << g.to_string() << "\n";
            MLForm ml = to_ml_form(g);
            std::cout << mlform_to_json(ml).dump(2) << "\n";
            return 0;
        }

        if (runbook->parsed()) {
            Runbook book = load_runbook(runbook_path);
            RunOverrides ovr;
            if (k_override > 0) ovr.K = k_override;
            if (prec_override > 0) ovr.precision = prec_override;
            if (min_digits_override > 0) ovr.min_digits = min_digits_override;
            ovr.skip_numeric = symbolic_only;
            RunbookResult result = run_book(book, jobs, ovr);
            std::cout << runbook_summary_table(result);
            if (!json_path.empty()) write_json(json_path, runbook_result_to_json(result));
            return result.pass() ? 0 : kExitFailure;
        }

        if (product->parsed()) {
            ProductResult r = product_r(Expr::parse(product_f), terms, product_prec);
            std::cout << "r = " << r.value.to_decimal(24) << "  (error bound "
                      << r.error_bound.to_decimal(3) << ", " << r.terms << " factors)\n";
            return 0;
        }
    } catch (const SyntaxError& e) {
        std::cerr << "syntax error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMath;
    }
    return kExitUsage;
}
