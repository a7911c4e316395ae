#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rasym/errors.hpp"
#include "rasym/highprec.hpp"
#include "rasym/json_io.hpp"
#include "rasym/runner.hpp"

namespace py = pybind11;
using namespace rasym;

namespace {

py::object json_to_py(const Json& j) {
    switch (j.type()) {
        case Json::value_t::null: return py::none();
        case Json::value_t::boolean: return py::bool_(j.get<bool>());
        case Json::value_t::number_integer: return py::int_(j.get<long long>());
        case Json::value_t::number_unsigned: return py::int_(j.get<unsigned long long>());
        case Json::value_t::number_float: return py::float_(j.get<double>());
        case Json::value_t::string: return py::str(j.get<std::string>());
        case Json::value_t::array: {
            py::list out;
            for (const auto& item : j) out.append(json_to_py(item));
            return out;
        }
        case Json::value_t::object: {
            py::dict out;
            for (auto it = j.begin(); it != j.end(); ++it)
                out[py::str(it.key())] = json_to_py(it.value());
            return out;
        }
        default: return py::none();
    }
}

Json py_to_json(const py::handle& obj) {
    if (obj.is_none()) return nullptr;
    if (py::isinstance<py::bool_>(obj)) return obj.cast<bool>();
    if (py::isinstance<py::int_>(obj)) return obj.cast<long long>();
    if (py::isinstance<py::float_>(obj)) return obj.cast<double>();
    if (py::isinstance<py::str>(obj)) return obj.cast<std::string>();
    if (py::isinstance<py::dict>(obj)) {
        Json j = Json::object();
        for (auto item : obj.cast<py::dict>())
            j[item.first.cast<std::string>()] = py_to_json(item.second);
        return j;
    }
    if (py::isinstance<py::list>(obj) || py::isinstance<py::tuple>(obj)) {
        Json j = Json::array();
        for (auto item : obj.cast<py::sequence>()) j.push_back(py_to_json(item));
        return j;
    }
    throw py::type_error("unsupported value in config");
}

Json expansion_to_json(const NormalizedExpansion& n) {
    return Json{{"ml_form", mlform_to_json(n.ml)},
                {"rho", rat_to_string(n.rho)},
                {"b1", rat_to_string(n.b1)},
                {"c_slot", Json{{"m", n.c_slot_m}, {"kexp", rat_to_string(n.c_slot_kexp)}}},
                {"definition", n.definition},
                {"u", series_to_json(n.u)},
                {"y", series_to_json(n.y)},
                {"x", series_to_json(n.x)},
                {"y_text", render_display(scaled_display_terms(
                               n.y, n.y.scale().as_rational() ? ScaleFactor() : n.y.scale().inverse()))},
                {"x_text", render_display(scaled_display_terms(n.x, n.report_scale))}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Asymptotics of nonlinear recurrences via the reciprocal map";

    py::register_exception<SyntaxError>(m, "ExprSyntaxError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "MathDomainError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionLossError", PyExc_ArithmeticError);
    py::register_exception<StructureError>(m, "UnsupportedMapError", PyExc_ValueError);

    m.def("parse", [](const std::string& text) { return Expr::parse(text).pretty(); },
          py::arg("text"),
          "Parse a recurrence map and return its canonical rendering.");

    m.def("eval_expr",
          [](const std::string& text, const std::string& point, long precision) {
              Expr e = Expr::parse(text);
              Real p(rat_from_string(point), static_cast<mpfr_prec_t>(precision));
              return e.eval(p, static_cast<mpfr_prec_t>(precision))
                  .to_decimal(static_cast<std::size_t>(precision * 0.3) + 2);
          },
          py::arg("text"), py::arg("point"), py::arg("precision") = 128,
          "Evaluate at a positive rational point; returns a decimal string.");

    m.def("derive",
          [](const std::string& f_text, int order) {
              Expr f = Expr::parse(f_text);
              PuiseuxSeries g = derive_g_series(f, order);
              MLForm ml = to_ml_form(g);
              return json_to_py(Json{{"g_series", g.to_string()}, {"ml_form", mlform_to_json(ml)}});
          },
          py::arg("f"), py::arg("order") = 14,
          "Reciprocal map g(y) = 1/f(1/y) as a series, plus its normalized form.");

    m.def("solve_series",
          [](const std::string& f_text, int order, const std::string& scale) {
              CaseConfig cfg;
              cfg.name = "adhoc";
              cfg.f_text = f_text;
              cfg.M = order;
              cfg.report_scale = parse_scale_text(scale);
              return json_to_py(expansion_to_json(solve_symbolic(cfg)));
          },
          py::arg("f"), py::arg("order") = 6, py::arg("scale") = "1",
          "Symbolic u/y/x expansions with coefficients polynomial in C.");

    m.def("extract_constant",
          [](const std::string& f_text, const std::string& scale, int order, long K,
             long precision) {
              CaseConfig cfg;
              cfg.name = "adhoc";
              cfg.f_text = f_text;
              cfg.M = order;
              cfg.K = K;
              cfg.precision = precision;
              cfg.report_scale = parse_scale_text(scale);
              CaseReport r = run_case(cfg);
              if (!r.stage_error.empty()) throw Error(r.stage_error);
              return json_to_py(case_report_to_json(r));
          },
          py::arg("f"), py::arg("scale") = "1", py::arg("order") = 6, py::arg("K") = 100000,
          py::arg("precision") = 256,
          "Full pipeline: series plus the numeric constant report.");

    m.def("run_case",
          [](const py::dict& config) {
              CaseConfig cfg = case_config_from_json(py_to_json(config));
              CaseReport r = run_case(cfg);
              return json_to_py(case_report_to_json(r));
          },
          py::arg("config"), "Run one case from a config dict (same schema as the JSON files).");

    m.def("product_r",
          [](long terms, long precision, const std::string& f_text) {
              ProductResult r = product_r(Expr::parse(f_text), terms, precision);
              return json_to_py(Json{{"value", r.value.to_decimal(30)},
                                     {"error_bound", r.error_bound.to_decimal(3)},
                                     {"terms", r.terms}});
          },
          py::arg("terms") = 80, py::arg("precision") = 128, py::arg("f") = "x + 1/x",
          "Infinite product over the add-the-reciprocal orbit.");
}
