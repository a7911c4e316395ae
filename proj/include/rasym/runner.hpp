#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rasym/highprec.hpp"
#include "rasym/json_io.hpp"
#include "rasym/solver.hpp"

namespace rasym {

struct DerivedSpec {
    std::string label;
    std::string expr;                   // expression in C, e.g. "2*(C-1)"
    std::optional<std::string> expected;  // decimal digits to match
};

// A displayed-series fixture: the series multiplied by `scale`, all nonzero
// terms with k-exponent >= `through` listed exactly.
struct DisplayFixture {
    ScaleFactor scale;
    Rational through;
    std::vector<DisplayTerm> terms;
};

struct CaseExpect {
    std::optional<std::string> c_digits;
    long min_digits = 20;
    std::optional<DisplayFixture> y_display;
    std::optional<DisplayFixture> x_display;
};

struct CaseConfig {
    std::string name;
    std::string f_text;
    Rational y0 = Rational(1);
    ScaleFactor report_scale;
    int M = 6;
    long K = 1000000;
    long precision = 256;
    std::vector<DerivedSpec> derived;
    std::optional<CaseExpect> expected;
};

struct FixtureCheck {
    std::string what;
    bool pass = false;
    std::string detail;
};

struct DerivedOutput {
    std::string label;
    std::string expr;
    Real value;
    std::optional<long> matched_digits;
};

struct CaseReport {
    std::string name;
    std::string f_text;
    std::string stage_error;  // "<stage>: <message>" when the pipeline failed
    MLForm ml;
    std::optional<NormalizedExpansion> expansion;
    std::optional<ConstantReport> constant;
    std::vector<DerivedOutput> derived;
    std::vector<FixtureCheck> fixtures;
    std::optional<long> c_matched_digits;
    double seconds = 0;

    bool pass() const {
        if (!stage_error.empty()) return false;
        for (const auto& f : fixtures)
            if (!f.pass) return false;
        return true;
    }
};

struct CrossCheck {
    std::string label;
    std::string a_case, a_expr;
    std::string b_case, b_expr;
    long min_digits = 20;
};

struct Runbook {
    std::vector<CaseConfig> cases;
    std::vector<CrossCheck> cross_checks;
};

struct RunOverrides {
    std::optional<long> K;
    std::optional<long> precision;
    std::optional<long> min_digits;
    bool skip_numeric = false;  // symbolic fixtures only
};

struct RunbookResult {
    std::vector<CaseReport> reports;
    std::vector<FixtureCheck> cross_results;
    double seconds = 0;

    bool pass() const {
        for (const auto& r : reports)
            if (!r.pass()) return false;
        for (const auto& c : cross_results)
            if (!c.pass) return false;
        return true;
    }
};

// Full pipeline for one case:
// parse -> derive_g_series -> to_ml_form -> solve_u_series -> derive_xy_series
// -> normalize_constant -> iterate_map -> solve_constant -> derived outputs,
// then fixture comparison. Stage failures are captured, not thrown.
CaseReport run_case(const CaseConfig& cfg, const RunOverrides& ovr = {});

// Symbolic part only (no orbit): used by `series`/`derive` and by tests.
NormalizedExpansion solve_symbolic(const CaseConfig& cfg);

RunbookResult run_book(const Runbook& book, int jobs = 0, const RunOverrides& ovr = {});

CaseConfig case_config_from_json(const Json& j);
Json case_config_to_json(const CaseConfig& cfg);
Runbook runbook_from_json(const Json& j);
Runbook load_runbook(const std::string& path);
Json case_report_to_json(const CaseReport& r);
Json runbook_result_to_json(const RunbookResult& r);
std::string runbook_summary_table(const RunbookResult& r);

// Evaluates a derived-output expression (in the variable C) at the value c.
Real eval_derived_expr(const std::string& expr, const Real& c);

// Parses "2^(1/2)*3^(-1/3)", "(3/2)^(1/3)", "1", ... into a factored scale.
ScaleFactor parse_scale_text(const std::string& text);

}  // namespace rasym
