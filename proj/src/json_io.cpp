#include "rasym/json_io.hpp"

#include "rasym/errors.hpp"

namespace rasym {

Json rational_to_json(const Rational& q) { return rat_to_string(q); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
    if (j.is_string()) return rat_from_string(j.get<std::string>());
    throw SyntaxError("expected a rational (string or integer), got " + j.dump(), 0);
}

Json scale_to_json(const ScaleFactor& s) {
    Json arr = Json::array();
    for (const auto& [p, e] : s.factors())
        arr.push_back(Json::array({std::to_string(p), rat_to_string(e)}));
    return arr;
}

ScaleFactor scale_from_json(const Json& j) {
    ScaleFactor s;
    if (j.is_null()) return s;
    for (const auto& f : j) {
        if (!f.is_array() || f.size() != 2)
            throw SyntaxError("scale factor entries are [base, exponent] pairs", 0);
        s = s * ScaleFactor::from_power(rational_from_json(f[0]), rational_from_json(f[1]));
    }
    return s;
}

namespace {

Json num_den(const Rational& q) {
    return Json::array({q.get_num().get_str(), q.get_den().get_str()});
}

Rational from_num_den(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw SyntaxError("expected [num, den]", 0);
    Rational q(Integer(j[0].get<std::string>()), Integer(j[1].get<std::string>()));
    q.canonicalize();
    return q;
}

}  // namespace

Json series_to_json(const AsymSeries& s) {
    Json scale = Json::array();
    for (const auto& [p, e] : s.scale().factors()) {
        Json entry = Json::array({std::to_string(p)});
        entry.push_back(e.get_num().get_str());
        entry.push_back(e.get_den().get_str());
        scale.push_back(entry);
    }
    Json terms = Json::array();
    for (const auto& [key, poly] : s.terms()) {
        Json coeffs = Json::array();
        for (const auto& c : poly.coeffs()) coeffs.push_back(num_den(c));
        terms.push_back(Json{{"m", key.first}, {"l", key.second}, {"poly", coeffs}});
    }
    return Json{{"scale", scale}, {"r0", num_den(s.r0())}, {"order", s.order()}, {"terms", terms}};
}

AsymSeries series_from_json(const Json& j) {
    ScaleFactor scale;
    for (const auto& f : j.at("scale")) {
        Rational base = rat_from_string(f[0].get<std::string>());
        Rational e(Integer(f[1].get<std::string>()), Integer(f[2].get<std::string>()));
        e.canonicalize();
        scale = scale * ScaleFactor::from_power(base, e);
    }
    AsymSeries s(scale, from_num_den(j.at("r0")), j.at("order").get<int>());
    for (const auto& t : j.at("terms")) {
        std::vector<Rational> coeffs;
        for (const auto& c : t.at("poly")) coeffs.push_back(from_num_den(c));
        s.set_term(t.at("m").get<int>(), t.at("l").get<int>(), ConstPoly::from_coeffs(coeffs));
    }
    return s;
}

Json mlform_to_json(const MLForm& m) {
    Json a = Json::array();
    for (const auto& c : m.a) a.push_back(rat_to_string(c));
    return Json{{"t", m.t},
                {"tau", m.tau},
                {"lambda", rat_to_string(m.lambda)},
                {"a", a},
                {"u_map", m.u_map.to_string("u")}};
}

Json display_terms_to_json(const std::vector<DisplayTerm>& terms) {
    Json arr = Json::array();
    for (const auto& t : terms) {
        Json coeffs = Json::array();
        for (const auto& c : t.coeff.coeffs()) coeffs.push_back(rat_to_string(c));
        arr.push_back(Json::array({rat_to_string(t.kexp), t.log_power, coeffs}));
    }
    return arr;
}

}  // namespace rasym
