#include "cgsf/json_io.hpp"

#include <cmath>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json corner(const GeneralizedNumber& x) {
  if (x.is_exact()) return to_string(x.exact());
  return to_json(x);
}

std::string tri_name(Tri t) { return std::string(to_string(t)); }

}  // namespace

Json to_json(const EpsilonGrid& grid) {
  return Json{{"base", grid.base()}, {"k_min", grid.k_min()}, {"k_max", grid.k_max()}};
}

EpsilonGrid grid_from_json(const Json& j) {
  return EpsilonGrid(j.value("base", 2.0), j.value("k_min", 4), j.value("k_max", 48));
}

Json to_json(const GeneralizedNumber& x) {
  if (x.is_exact()) {
    Json terms = Json::array();
    for (const auto& t : x.exact().terms()) terms.push_back(Json::array({t.coeff, t.expo}));
    return Json{{"variant", "exact"}, {"text", to_string(x.exact())}, {"terms", terms}};
  }
  Json samples = Json::array();
  for (const auto& s : x.sampled().samples())
    samples.push_back(Json::array({s.sign(), s.is_zero() ? Json(nullptr) : Json(s.log_magnitude())}));
  return Json{{"variant", "sampled"}, {"grid", to_json(x.sampled().grid())}, {"samples", samples}};
}

GeneralizedNumber number_from_json(const Json& j) {
  if (j.is_string()) return GeneralizedNumber::parse(j.get<std::string>());
  if (j.is_number()) return GeneralizedNumber(j.get<double>());
  if (!j.is_object()) throw PreconditionError("a generalized number is a string, a number or an object");
  const std::string variant = j.value("variant", "");
  if (variant == "exact") {
    if (j.contains("terms")) {
      std::vector<AsymptoticTerm> terms;
      for (const auto& t : j.at("terms")) terms.push_back({t.at(0).get<double>(), t.at(1).get<double>()});
      return ExactNet(std::move(terms));
    }
    return GeneralizedNumber::parse(j.at("text").get<std::string>());
  }
  if (variant == "sampled") {
    EpsilonGrid grid = grid_from_json(j.at("grid"));
    std::vector<LogReal> samples;
    for (const auto& s : j.at("samples")) {
      int sign = s.at(0).get<int>();
      samples.push_back(sign == 0 ? LogReal::zero() : LogReal(sign, s.at(1).get<double>()));
    }
    if (samples.size() != grid.size()) throw PreconditionError("sample count does not match the grid");
    return SampledNet(grid, std::move(samples));
  }
  throw PreconditionError("unknown number variant '" + variant + "'");
}

Json to_json(const GenVec& x) {
  Json out = Json::array();
  for (const auto& c : x) out.push_back(to_json(c));
  return out;
}

Json to_json(const Valuation& v) {
  return Json{{"value", finite_or_null(v.value)}, {"negligible", v.negligible()}, {"reliable", v.reliable},
              {"residual", v.residual}};
}

Json to_json(const BoxNet& net) {
  Json boxes = Json::array();
  for (const auto& b : net.boxes()) {
    Json box = Json::array();
    for (std::size_t d = 0; d < b.lo.size(); ++d) box.push_back(Json::array({corner(b.lo[d]), corner(b.hi[d])}));
    boxes.push_back(box);
  }
  return boxes;
}

BoxNet box_net_from_json(const Json& j, const DecisionConfig& cfg) {
  if (!j.is_array() || j.empty()) throw PreconditionError("a box net is a nonempty list of boxes");
  auto is_scalar = [](const Json& v) { return v.is_string() || v.is_number() || v.is_object(); };
  auto is_pair = [&](const Json& v) { return v.is_array() && v.size() == 2 && is_scalar(v[0]) && is_scalar(v[1]); };
  Json boxes = j;
  if (is_pair(j[0])) boxes = Json::array({j});
  std::size_t dim = 0;
  std::vector<Box> out;
  for (const auto& box : boxes) {
    if (!box.is_array() || box.empty()) throw PreconditionError("a box is a nonempty list of [lo, hi] pairs");
    Box b;
    for (const auto& side : box) {
      if (!is_pair(side)) throw PreconditionError("every box side must be a [lo, hi] pair");
      b.lo.push_back(number_from_json(side[0]));
      b.hi.push_back(number_from_json(side[1]));
    }
    if (dim == 0) dim = b.lo.size();
    if (b.lo.size() != dim) throw PreconditionError("boxes of different dimensions");
    out.push_back(std::move(b));
  }
  return BoxNet(dim, std::move(out), cfg);
}

BoxNet parse_box_net(std::string_view text, const DecisionConfig& cfg) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid box net JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  return box_net_from_json(j, cfg);
}

GenVec parse_point(std::string_view text) {
  GenVec out;
  std::size_t first = text.find_first_not_of(" \t");
  if (first != std::string_view::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("invalid point JSON", e.byte > 0 ? e.byte - 1 : 0);
    }
    for (const auto& c : j) out.push_back(number_from_json(c));
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    try {
      out.push_back(GeneralizedNumber::parse(part));
    } catch (const ParseError& e) {
      throw ParseError("invalid point coordinate", start + e.position());
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Json to_json(const Positivity& p) {
  Json out{{"decision", tri_name(p.decision)}};
  out["witness"] = p.witness ? Json(*p.witness) : Json(nullptr);
  return out;
}

Json to_json(const NormValue& n, const DecisionConfig& cfg) {
  return Json{{"order", n.order},
              {"global", n.global},
              {"converged", n.converged},
              {"support_mismatch", n.support_mismatch},
              {"valuation", to_json(valuation(n.value, cfg))},
              {"value", to_json(n.value)}};
}

Json to_json(const MetricReport& r) {
  Json table = Json::array();
  for (std::size_t n = 0; n < r.v.size(); ++n) {
    Json row = to_json(r.v[n]);
    row["n"] = static_cast<int>(n + 1);
    table.push_back(row);
  }
  Json notices = Json::array();
  for (const auto& s : r.notices) notices.push_back(s);
  return Json{{"n_trunc", r.n_trunc},
              {"v", table},
              {"d_e", r.d_e},
              {"d_e_bracket", Json::array({r.d_e_lo, r.d_e_hi})},
              {"d_2", r.d_2},
              {"d_2_bracket", Json::array({r.d_2_lo, r.d_2_hi})},
              {"tail_e", r.tail_e},
              {"tail_2", r.tail_2},
              {"upper_bound_holds", r.upper_bound_holds},
              {"lower_bound_holds", r.lower_bound_holds},
              {"notices", notices}};
}

Json to_json(const Counterexample& c) {
  return Json{{"point", to_json(c.point)},
              {"alpha", c.alpha},
              {"negligible", tri_name(c.negligible)},
              {"value_valuation", to_json(c.value_valuation)},
              {"where", c.where}};
}

Json to_json(const ExtremeValues& e) {
  return Json{{"min", to_json(e.min)},       {"max", to_json(e.max)},
              {"argmin", to_json(e.argmin)}, {"argmax", to_json(e.argmax)},
              {"converged", e.converged}};
}

}  // namespace cgsf
