#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "cgsf/errors.hpp"
#include "cgsf/verify.hpp"

using namespace cgsf;

namespace {

struct Settings {
  double grid_base = 2.0;
  int k_min = 4;
  int k_max = 48;
  int m_max = 12;
  double v_cut = 12.0;
  int opt_points = 64;
  int opt_starts = 5;
  int opt_iterations = 100;
  std::uint64_t seed = 7;
  std::string format = "json";
  std::string config;
};

struct Outcome {
  Json report;
  Tri decided = Tri::True;  // Undecidable maps to exit code 2
};

GsfConfig make_config(const Settings& s) {
  if (!(s.grid_base > 1.0)) throw PreconditionError("grid base must exceed 1");
  if (s.k_min < 0 || s.k_max - s.k_min < 5) throw PreconditionError("need 0 <= k-min and k-max >= k-min + 5");
  if (s.m_max < 1) throw PreconditionError("mmax must be positive");
  if (s.opt_points < 2 || s.opt_starts < 1 || s.opt_iterations < 1) throw PreconditionError("optimizer budget too small");
  GsfConfig cfg;
  cfg.net.grid = EpsilonGrid(s.grid_base, s.k_min, s.k_max);
  cfg.net.decide.m_max = s.m_max;
  cfg.net.decide.v_cut = s.v_cut;
  cfg.opt.grid_points = s.opt_points;
  cfg.opt.starts = s.opt_starts;
  cfg.opt.iterations = s.opt_iterations;
  cfg.opt.seed = s.seed;
  return cfg;
}

Json settings_json(const Settings& s) {
  return Json{{"grid-base", s.grid_base}, {"k-min", s.k_min},           {"k-max", s.k_max},
              {"mmax", s.m_max},          {"v-cut", s.v_cut},           {"opt-points", s.opt_points},
              {"opt-starts", s.opt_starts}, {"opt-iterations", s.opt_iterations}, {"seed", s.seed}};
}

// Fills options that were given neither on the command line nor through the environment.
void apply_config_file(CLI::App& app, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("invalid config JSON", e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!j.is_object()) throw PreconditionError("config file must hold a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    CLI::Option* opt = nullptr;
    try {
      opt = app.get_option("--" + it.key());
    } catch (const CLI::OptionNotFound&) {
      throw PreconditionError("unknown config key '" + it.key() + "'");
    }
    if (opt->count() > 0) continue;
    std::string value = it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
    opt->add_result(value);
    opt->run_callback();
  }
}

void render_text(const Json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      render_text(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const Json& j, const std::string& format) {
  if (format == "text") render_text(j, "", std::cout);
  else std::cout << j.dump(2) << "\n";
}

FunctionallyCompactSet compact_from(const std::string& text, const GsfConfig& cfg) {
  return make_functionally_compact(InternalSet(parse_box_net(text, cfg.net.decide)), cfg.net.decide);
}

Gsf global_from(const std::string& text, std::size_t dim) {
  SmoothExpr e = parse_expr(text);
  return Gsf::global(e, std::max<std::size_t>(dim, static_cast<std::size_t>(std::max(arity(e), 1))));
}

CompactlySupportedGsf supported_or_throw(const std::string& text, const FunctionallyCompactSet& k, int order,
                                         const GsfConfig& cfg) {
  auto v = verify_compact_support(global_from(text, k.dim()), k, order, cfg);
  if (auto* c = std::get_if<CompactlySupportedGsf>(&v)) return *c;
  throw PreconditionError("'" + text + "' is not supported in the given set: " +
                          to_json(std::get<Counterexample>(v)).dump());
}

Json valuations_of(const GenVec& v, const DecisionConfig& cfg) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(valuation(x, cfg)));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized numbers, functionally compact sets and compactly supported generalized smooth functions"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings s;
  auto env = [](CLI::Option* o, const char* name) { return o->envname(std::string("CGSF_") + name); };
  env(app.add_option("--grid-base", s.grid_base, "Grid base b in eps_k = b^-k"), "GRID_BASE");
  env(app.add_option("--k-min", s.k_min, "Smallest grid exponent"), "K_MIN");
  env(app.add_option("--k-max", s.k_max, "Largest grid exponent"), "K_MAX");
  env(app.add_option("--mmax", s.m_max, "Largest positivity witness searched"), "MMAX");
  env(app.add_option("--v-cut", s.v_cut, "Valuations at or above this count as negligible"), "V_CUT");
  env(app.add_option("--opt-points", s.opt_points, "Optimizer samples per dimension"), "OPT_POINTS");
  env(app.add_option("--opt-starts", s.opt_starts, "Optimizer local refinements"), "OPT_STARTS");
  env(app.add_option("--opt-iterations", s.opt_iterations, "Optimizer iterations per refinement"), "OPT_ITERATIONS");
  env(app.add_option("--seed", s.seed, "Seed for every random choice"), "SEED");
  env(app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"})), "FORMAT");
  env(app.add_option("--config", s.config, "JSON file with the same keys as the flags"), "CONFIG");

  std::function<Outcome(const GsfConfig&)> run;
  std::string expr, expr2, point, set = "[[-1,1]]", domain, radius, name;
  int order = 0, trunc = 20, j = 1;
  bool global = false;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a function at a generalized point");
  eval_cmd->add_option("expr", expr, "Expression in x1, x2, ... and eps")->required();
  eval_cmd->add_option("--at", point, "Point: comma-separated exact nets or a JSON list")->required();
  eval_cmd->add_option("--domain", domain, "Open boxes of a strongly internal domain (box-net JSON)");
  eval_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      GenVec x = parse_point(point);
      SmoothExpr e = parse_expr(expr);
      Gsf f = domain.empty() ? Gsf::global(e, x.size())
                             : Gsf(e, StronglyInternalSet(parse_box_net(domain, cfg.net.decide)));
      EvalResult r = eval(f, x, cfg);
      Json warnings = r.warnings;
      Json rep{{"command", "eval"},       {"expr", expr}, {"point", to_json(x)}, {"value", to_json(r.value)},
               {"valuation", valuations_of(r.value, cfg.net.decide)}, {"exact_path", r.exact_path},
               {"warnings", warnings}};
      return Outcome{rep, r.warnings.empty() ? Tri::True : Tri::Undecidable};
    };
  });

  auto* extreme_cmd = app.add_subcommand("extreme", "Minimum and maximum over a functionally compact set");
  extreme_cmd->add_option("expr", expr)->required();
  extreme_cmd->add_option("--set", set, "Box-net JSON");
  extreme_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      FunctionallyCompactSet k = compact_from(set, cfg);
      ExtremeValues e = extreme_values(global_from(expr, k.dim()), k, cfg);
      Json rep = to_json(e);
      rep["valuation_min"] = to_json(valuation(e.min, cfg.net.decide));
      rep["valuation_max"] = to_json(valuation(e.max, cfg.net.decide));
      return Outcome{Json{{"command", "extreme"}, {"expr", expr}, {"set", to_json(k.net())}, {"result", rep}}};
    };
  });

  auto* support_cmd = app.add_subcommand("verify-support", "Check that a global function is supported in a set");
  support_cmd->add_option("expr", expr)->required();
  support_cmd->add_option("--set", set, "Box-net JSON");
  support_cmd->add_option("--order", order, "Derivative order checked")->check(CLI::Range(0, 20));
  support_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      FunctionallyCompactSet k = compact_from(set, cfg);
      auto v = verify_compact_support(global_from(expr, k.dim()), k, order, cfg);
      Json rep{{"command", "verify-support"}, {"expr", expr}, {"set", to_json(k.net())}, {"order", order}};
      if (auto* c = std::get_if<CompactlySupportedGsf>(&v)) {
        rep["verified"] = true;
        Json samples = Json::array();
        for (const auto& e : c->exterior_samples()) samples.push_back(Json{{"point", to_json(e.point)}, {"q", e.q}});
        rep["exterior_samples"] = samples;
        return Outcome{rep};
      }
      const auto& ce = std::get<Counterexample>(v);
      rep["verified"] = false;
      rep["counterexample"] = to_json(ce);
      return Outcome{rep, ce.negligible == Tri::False ? Tri::True : Tri::Undecidable};
    };
  });

  auto* norm_cmd = app.add_subcommand("norm", "Norms ||f||_0 .. ||f||_m of a compactly supported function");
  norm_cmd->add_option("expr", expr)->required();
  norm_cmd->add_option("--set", set, "Support witness K (box-net JSON)");
  norm_cmd->add_option("--order", order, "Largest norm order m")->check(CLI::Range(0, kMaxNormOrder));
  norm_cmd->add_flag("--global", global, "Take sups over the whole space instead of K");
  norm_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      CompactlySupportedGsf f = supported_or_throw(expr, compact_from(set, cfg), order, cfg);
      Json table = Json::array();
      if (global) {
        for (int m = 0; m <= order; ++m) table.push_back(to_json(norm_m_global(f, m, cfg), cfg.net.decide));
      } else {
        for (const auto& n : norm_table(f, order, cfg)) table.push_back(to_json(n, cfg.net.decide));
      }
      return Outcome{Json{{"command", "norm"}, {"expr", expr}, {"set", to_json(f.support().net())}, {"norms", table}}};
    };
  });

  auto* metric_cmd = app.add_subcommand("metric", "Distances d_e and d_2 between two functions");
  metric_cmd->add_option("f", expr)->required();
  metric_cmd->add_option("g", expr2)->required();
  metric_cmd->add_option("--set", set, "Common support witness (box-net JSON)");
  metric_cmd->add_option("--trunc", trunc, "Number of series terms")->check(CLI::PositiveNumber);
  metric_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      FunctionallyCompactSet k = compact_from(set, cfg);
      MetricReport m = metric(supported_or_throw(expr, k, 2, cfg), supported_or_throw(expr2, k, 2, cfg), trunc, cfg);
      return Outcome{Json{{"command", "metric"}, {"f", expr}, {"g", expr2}, {"report", to_json(m)}}};
    };
  });

  auto* member_cmd = app.add_subcommand("member", "Membership in balls, sets of the sharp topology, or sets");
  bool ball = false, cset = false, uset = false, exterior = false, internal = false;
  auto* kind = member_cmd->add_option_group("kind");
  kind->add_flag("--ball", ball, "||f - g||_m < radius");
  kind->add_flag("--cset", cset, "P_m(f - g) < radius (a positive real)");
  kind->add_flag("--uset", uset, "||f - g||_m / radius infinitesimal");
  kind->add_flag("--exterior", exterior, "Point exterior to the set");
  kind->add_flag("--internal", internal, "Point in the internal set");
  kind->require_option(1);
  member_cmd->add_option("f", expr);
  member_cmd->add_option("g", expr2);
  member_cmd->add_option("--point", point);
  member_cmd->add_option("--set", set, "Box-net JSON");
  member_cmd->add_option("--order", order)->check(CLI::Range(0, kMaxNormOrder));
  member_cmd->add_option("--radius", radius, "Exact net, or a real for --cset");
  member_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      FunctionallyCompactSet k = compact_from(set, cfg);
      Json rep{{"command", "member"}, {"set", to_json(k.net())}};
      if (exterior || internal) {
        if (point.empty()) throw PreconditionError("--point is required");
        GenVec x = parse_point(point);
        rep["point"] = to_json(x);
        if (exterior) {
          ExteriorResult r = member_exterior(x, k, cfg.net);
          rep["kind"] = "exterior";
          rep["member"] = std::string(to_string(r.decision));
          rep["q"] = r.q ? Json(*r.q) : Json(nullptr);
          return Outcome{rep, r.decision};
        }
        Tri r = member_internal(x, k, cfg.net);
        rep["kind"] = "internal";
        rep["member"] = std::string(to_string(r));
        return Outcome{rep, r};
      }
      if (expr.empty() || expr2.empty() || radius.empty()) throw PreconditionError("f, g and --radius are required");
      CompactlySupportedGsf f = supported_or_throw(expr, k, order, cfg), g = supported_or_throw(expr2, k, order, cfg);
      rep["f"] = expr;
      rep["g"] = expr2;
      rep["order"] = order;
      rep["radius"] = radius;
      if (cset) {
        bool r = c_set_member(f, g, order, std::stod(radius), cfg);
        rep["kind"] = "cset";
        rep["member"] = r;
        return Outcome{rep};
      }
      GeneralizedNumber rho = GeneralizedNumber::parse(radius);
      Tri r = ball ? ball_member(f, g, order, rho, cfg) : u_set_member(f, g, order, rho, cfg);
      rep["kind"] = ball ? "ball" : "uset";
      rep["member"] = std::string(to_string(r));
      return Outcome{rep, r};
    };
  });

  auto* exhaust_cmd = app.add_subcommand("exhaust", "The j-th compact set exhausting a strongly internal set");
  std::string compact;
  exhaust_cmd->add_option("--set", set, "Open boxes of U (box-net JSON)");
  exhaust_cmd->add_option("--j", j, "Exhaustion index")->check(CLI::PositiveNumber);
  exhaust_cmd->add_option("--compact", compact, "A functionally compact K: report its covering index");
  exhaust_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      StronglyInternalSet u(parse_box_net(set, cfg.net.decide));
      FunctionallyCompactSet kj = exhaustion(u, j, cfg.net.decide);
      Json rep{{"command", "exhaust"}, {"j", j}, {"K_j", to_json(kj.net())}, {"sharp_bound", kj.sharp_bound()}};
      if (!compact.empty()) {
        CoveringIndex c = find_covering_index(compact_from(compact, cfg), u, cfg.net.decide);
        rep["covering"] = Json{{"j", c.j}, {"margin_index", c.margin_index}, {"bound_index", c.bound_index},
                               {"witness", c.witness}};
      }
      return Outcome{rep};
    };
  });

  auto* demo_cmd = app.add_subcommand("demo", "Run a worked scenario and check its outcome");
  demo_cmd->add_option("name", name)->required()->check(CLI::IsMember(demo_names()));
  demo_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      DemoReport d = run_demo(name, cfg);
      return Outcome{d.report, d.passed ? Tri::True : Tri::False};
    };
  });

  auto* verify_cmd = app.add_subcommand("verify", "Run property suites");
  std::vector<std::string> suites = suite_names();
  suites.push_back("all");
  verify_cmd->add_option("suite", name)->required()->check(CLI::IsMember(suites));
  verify_cmd->callback([&] {
    run = [&](const GsfConfig& cfg) {
      Json list = Json::array();
      bool passed = true;
      for (const auto& r : run_suite(name, s.seed, cfg)) {
        passed = passed && r.passed();
        list.push_back(to_json(r));
      }
      return Outcome{Json{{"command", "verify"}, {"suite", name}, {"seed", s.seed}, {"passed", passed},
                          {"suites", list}}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (!s.config.empty()) apply_config_file(app, s.config);
    GsfConfig cfg = make_config(s);
    Outcome out = run(cfg);
    out.report["config"] = settings_json(s);
    emit(out.report, s.format);
    // A demo whose claims fail is an assertion failure, not an undecided result.
    if (out.decided == Tri::False && app.got_subcommand("demo")) return 1;
    return out.decided == Tri::Undecidable ? 2 : 0;
  } catch (const Error& e) {
    Json err{{"error", e.what()}};
    if (auto* p = dynamic_cast<const ParseError*>(&e)) err["position"] = p->position();
    emit(err, s.format);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    emit(Json{{"error", e.what()}}, s.format);
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
