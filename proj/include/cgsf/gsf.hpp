#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cgsf/expr.hpp"
#include "cgsf/optimizer.hpp"
#include "cgsf/sets.hpp"

namespace cgsf {

struct GsfConfig {
  NetConfig net;
  OptimizerConfig opt;
  int max_order = 6;        // largest derivative order accepted by derivative()
  int exterior_budget = 20; // exterior points tried by verify_compact_support
};

// Sampled evidence that derivatives of a defining net are moderate.
struct ModeratenessCertificate {
  EpsilonGrid grid;
  int order = 0;
  int points_tested = 0;
  bool passed = true;
  double worst_valuation = 0.0;  // smallest valuation seen over all points and orders
};

// A generalized smooth function given by an expression net u_eps(x) per
// component, on a strongly internal domain or on the whole space.
class Gsf {
 public:
  Gsf(SmoothExpr u, StronglyInternalSet domain);
  Gsf(std::vector<SmoothExpr> components, StronglyInternalSet domain);
  static Gsf global(SmoothExpr u, std::size_t dim);
  static Gsf global(std::vector<SmoothExpr> components, std::size_t dim);

  std::size_t dim() const { return domain_.dim(); }
  std::size_t codim() const { return components_.size(); }
  const SmoothExpr& component(std::size_t i = 0) const { return components_.at(i); }
  const std::vector<SmoothExpr>& components() const { return components_; }
  const StronglyInternalSet& domain() const { return domain_; }
  bool is_global() const { return domain_.is_whole(); }

  const std::optional<ModeratenessCertificate>& certificate() const { return certificate_; }
  Gsf with_certificate(ModeratenessCertificate c) const;

 private:
  std::vector<SmoothExpr> components_;
  StronglyInternalSet domain_;
  std::optional<ModeratenessCertificate> certificate_;
};

struct ExteriorSample {
  GenVec point;
  int q = 0;  // the point keeps distance eps^q from the support witness
};

// A Gsf together with a functionally compact witness K such that every
// derivative up to verified_to_order vanished at each logged exterior point.
// verified_to_order < 0 marks a function whose verification was lost.
class CompactlySupportedGsf {
 public:
  const Gsf& gsf() const { return gsf_; }
  const FunctionallyCompactSet& support() const { return support_; }
  int verified_to_order() const { return verified_to_order_; }
  bool verified() const { return verified_to_order_ >= 0; }
  const std::vector<ExteriorSample>& exterior_samples() const { return samples_; }
  std::size_t dim() const { return gsf_.dim(); }

 private:
  friend struct CompactSupportAccess;
  CompactlySupportedGsf(Gsf f, FunctionallyCompactSet k, int order, std::vector<ExteriorSample> samples)
      : gsf_(std::move(f)), support_(std::move(k)), verified_to_order_(order), samples_(std::move(samples)) {}
  Gsf gsf_;
  FunctionallyCompactSet support_;
  int verified_to_order_;
  std::vector<ExteriorSample> samples_;
};

struct EvalResult {
  GenVec value;
  bool exact_path = false;
  std::vector<std::string> warnings;
};

// f(x) with the domain checked first; a polynomial net at an exact point is
// evaluated exactly, everything else per grid epsilon.
EvalResult eval(const Gsf& f, const GenVec& x, const GsfConfig& cfg = {});
GeneralizedNumber eval_scalar(const Gsf& f, const GenVec& x, const GsfConfig& cfg = {});

Gsf derivative(const Gsf& f, const MultiIndex& alpha, const GsfConfig& cfg = {});
CompactlySupportedGsf derivative(const CompactlySupportedGsf& f, const MultiIndex& alpha,
                                 const GsfConfig& cfg = {});

struct ExtremeValues {
  GenVec argmin;
  GenVec argmax;
  GeneralizedNumber min;
  GeneralizedNumber max;
  bool converged = true;
};

ExtremeValues extreme_values(const Gsf& f, const FunctionallyCompactSet& k, const GsfConfig& cfg = {});

struct ImageEnclosure {
  FunctionallyCompactSet set;
  // True when the box is the exact image: scalar f on a connected interval.
  bool exact = false;
};

ImageEnclosure image_enclosure(const Gsf& f, const FunctionallyCompactSet& k, const GsfConfig& cfg = {});

// Whether |f(x)| is strictly positive; a point test for the support.
Positivity support_positive_at(const Gsf& f, const GenVec& x, const GsfConfig& cfg = {});

struct Counterexample {
  GenVec point;
  MultiIndex alpha;
  Tri negligible = Tri::False;  // decision for the derivative value at the point
  Valuation value_valuation;
  std::string where;            // "far" or "exterior"
};

using SupportVerification = std::variant<CompactlySupportedGsf, Counterexample>;

SupportVerification verify_compact_support(const Gsf& f, const FunctionallyCompactSet& k, int order,
                                           const GsfConfig& cfg = {});

// Sampled moderateness of all derivatives up to `order` at the given points.
ModeratenessCertificate certify_moderateness(const Gsf& f, const std::vector<GenVec>& points, int order,
                                             const GsfConfig& cfg = {});

// The same net on the whole space, with a global bound certificate.
Gsf extend_global(const CompactlySupportedGsf& f, const GsfConfig& cfg = {});

// plateau(4|x|^2 / J^2) * u: equals u where |x| <= J/(2 sqrt 2), vanishes where |x| >= J/2.
CompactlySupportedGsf cutoff_embed_cgf(const Gsf& f, const GeneralizedNumber& j, const GsfConfig& cfg = {});

struct MollifiedRepresentative {
  CompactlySupportedGsf function;
  // Boxes of K fattened by eps^a on every side: the support of the new net.
  FunctionallyCompactSet support_net;
};

MollifiedRepresentative mollified_representative(const CompactlySupportedGsf& f, double a,
                                                 const GsfConfig& cfg = {});

// eps^-n * plateau(|x|^2 / (4 p^2 eps^2)): exactly eps^-n on |x| <= p eps.
Gsf delta_embedding(std::size_t n, double plateau_radius);

Gsf add(const Gsf& f, const Gsf& g);
Gsf sub(const Gsf& f, const Gsf& g);
Gsf mul(const Gsf& f, const Gsf& g);
// Multiplication by an exact generalized number.
Gsf scale(const GeneralizedNumber& c, const Gsf& f);

// The support witness becomes the union of both witnesses; logged samples
// that are not exterior to the union are dropped.
CompactlySupportedGsf add(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g,
                          const GsfConfig& cfg = {});
CompactlySupportedGsf sub(const CompactlySupportedGsf& f, const CompactlySupportedGsf& g,
                          const GsfConfig& cfg = {});
CompactlySupportedGsf scale(const GeneralizedNumber& c, const CompactlySupportedGsf& f);
CompactlySupportedGsf mul(const CompactlySupportedGsf& f, const Gsf& g);

// Union of the box nets of two functionally compact sets.
FunctionallyCompactSet set_union(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h,
                                 const DecisionConfig& cfg = {});

// Identical exact box lists.
bool same_boxes(const FunctionallyCompactSet& k, const FunctionallyCompactSet& h);

// Builds the record from parts; for callers that verified the invariant.
struct CompactSupportAccess {
  static CompactlySupportedGsf make(Gsf f, FunctionallyCompactSet k, int order,
                                    std::vector<ExteriorSample> samples) {
    return CompactlySupportedGsf(std::move(f), std::move(k), order, std::move(samples));
  }
};

// Exact value of a polynomial net at exact arguments, if it is one.
std::optional<ExactNet> exact_substitute(const SmoothExpr& e, const std::vector<ExactNet>& x);

}  // namespace cgsf
