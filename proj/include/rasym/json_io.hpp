#pragma once

#include <json.hpp>

#include "rasym/asym_series.hpp"
#include "rasym/reciprocity.hpp"

namespace rasym {

using Json = nlohmann::json;

// Exact values travel as decimal strings inside the documented JSON shapes;
// native JSON numbers cannot hold arbitrary-size integers.
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json scale_to_json(const ScaleFactor& s);  // [[base, exponent]...]
ScaleFactor scale_from_json(const Json& j);

// {scale: [[base, num, den]...], r0: [num, den], order, terms: [{m, l, poly: [[num, den]...]}]}
Json series_to_json(const AsymSeries& s);
AsymSeries series_from_json(const Json& j);

Json mlform_to_json(const MLForm& m);

Json display_terms_to_json(const std::vector<DisplayTerm>& terms);

}  // namespace rasym
