#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cgsf/json_io.hpp"

namespace cgsf {

struct PropertyResult {
  std::string name;
  int cases = 0;        // configurations on which the property was checked
  int failures = 0;
  Json counterexample;  // first failing configuration, null when none failed
  Json details = Json::object();
  bool passed() const { return failures == 0 && cases > 0; }
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool passed() const;
};

Json to_json(const PropertyResult& p);
Json to_json(const SuiteReport& r);

// Suite names accepted by run_suite besides "all".
const std::vector<std::string>& suite_names();
std::vector<SuiteReport> run_suite(const std::string& name, std::uint64_t seed, const GsfConfig& cfg = {});

// Exact arithmetic.
PropertyResult check_ring_axioms(int count, std::uint64_t seed);
PropertyResult check_ultrametric(int count, std::uint64_t seed, const DecisionConfig& cfg = {});
PropertyResult check_positivity_coherence(int count, std::uint64_t seed, const DecisionConfig& cfg = {});
PropertyResult check_valuation_bounds(int count, std::uint64_t seed, const DecisionConfig& cfg = {});
PropertyResult check_idempotents(const NetConfig& cfg = {});
PropertyResult check_sampled_exact_agreement(int count, std::uint64_t seed, const NetConfig& cfg = {});

// Sets.
PropertyResult check_exterior_idempotent(int count, std::uint64_t seed, const NetConfig& cfg = {});
PropertyResult check_representative_independence(int count, std::uint64_t seed, const NetConfig& cfg = {});
PropertyResult check_interleaving_closure(int count, std::uint64_t seed, const NetConfig& cfg = {});
PropertyResult check_interleaving_gap(const NetConfig& cfg = {});
PropertyResult check_exhaustion_monotone(int count, std::uint64_t seed, const NetConfig& cfg = {});

// Compactly supported functions.
PropertyResult check_extreme_sandwich(int members, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_image(int members, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_support_equivalence(int points, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_monotone_in_k(const GsfConfig& cfg = {});
PropertyResult check_derivative_closure(const GsfConfig& cfg = {});
PropertyResult check_extension_uniqueness(int count, std::uint64_t seed, const GsfConfig& cfg = {});

// Norms and topology.
PropertyResult check_norm_axioms(int count, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_valuation_ultrapseudonorm(int count, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_ball_convexity(int count, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_k_independence(const GsfConfig& cfg = {});
PropertyResult check_delta_valuations(const GsfConfig& cfg = {});
PropertyResult check_real_scaling(const GsfConfig& cfg = {});
PropertyResult check_ball_inclusions(int count, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_metric_bounds(int count, std::uint64_t seed, const GsfConfig& cfg = {});
PropertyResult check_metric_closed_form(const GsfConfig& cfg = {});

// Worked scenarios that assert their documented outcome.
struct DemoReport {
  std::string name;
  bool passed = true;
  Json report;
};

const std::vector<std::string>& demo_names();
DemoReport run_demo(const std::string& name, const GsfConfig& cfg = {});

// exp(-(log eps)^2 / 2): negligible, and unlike exp(-1/eps) it does not
// underflow a double anywhere on the default grid.
GeneralizedNumber negligible_radius(const EpsilonGrid& grid);

// A random real combination of bumps supported in [-1, 1], as expression
// text; with eps_powers some terms carry a factor eps^a, a in {0, 1, 2}.
std::string random_bump_combination(std::mt19937_64& rng, bool eps_powers);

}  // namespace cgsf
