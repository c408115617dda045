#pragma once

#include <json.hpp>

#include "cgsf/norms.hpp"

namespace cgsf {

using Json = nlohmann::ordered_json;

Json to_json(const EpsilonGrid& grid);
EpsilonGrid grid_from_json(const Json& j);

// Exact numbers: {"variant":"exact","text":...,"terms":[[coeff, expo], ...]}.
// Sampled ones: {"variant":"sampled","grid":...,"samples":[[sign, log|null], ...]}.
Json to_json(const GeneralizedNumber& x);
// Accepts the object form, an exact-net string or a plain number.
GeneralizedNumber number_from_json(const Json& j);

Json to_json(const GenVec& x);
Json to_json(const Valuation& v);
Json to_json(const BoxNet& net);
// A list of boxes, each a list of [lo, hi] per coordinate. A bare list of
// [lo, hi] pairs is read as a single box. Corners are exact-net strings or numbers.
BoxNet box_net_from_json(const Json& j, const DecisionConfig& cfg = {});
BoxNet parse_box_net(std::string_view text, const DecisionConfig& cfg = {});
// "0", "1, eps" or a JSON list of corners.
GenVec parse_point(std::string_view text);

Json to_json(const Positivity& p);
Json to_json(const NormValue& n, const DecisionConfig& cfg = {});
Json to_json(const MetricReport& r);
Json to_json(const Counterexample& c);
Json to_json(const ExtremeValues& e);

}  // namespace cgsf
