#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "cgsf/exact_net.hpp"
#include "cgsf/grid.hpp"
#include "cgsf/log_real.hpp"
#include "cgsf/tri.hpp"

namespace cgsf {

using Generator = std::function<LogReal(double log_eps)>;

// A representative net known only through its values on a grid. The optional
// generator lets the net be re-evaluated on another grid.
class SampledNet {
 public:
  SampledNet(EpsilonGrid grid, std::vector<LogReal> samples,
             std::shared_ptr<const Generator> generator = nullptr);

  static SampledNet from_generator(const EpsilonGrid& grid, Generator gen);
  static SampledNet from_exact(const EpsilonGrid& grid, const ExactNet& x);

  const EpsilonGrid& grid() const { return grid_; }
  const std::vector<LogReal>& samples() const { return samples_; }
  const LogReal& sample(std::size_t i) const { return samples_[i]; }
  const std::shared_ptr<const Generator>& generator() const { return generator_; }

 private:
  EpsilonGrid grid_;
  std::vector<LogReal> samples_;
  std::shared_ptr<const Generator> generator_;
};

// An element of the ring of generalized numbers, backed either by an exact
// asymptotic series or by grid samples of a representative.
class GeneralizedNumber {
 public:
  GeneralizedNumber() : rep_(ExactNet()) {}
  GeneralizedNumber(ExactNet x) : rep_(std::move(x)) {}
  GeneralizedNumber(SampledNet x) : rep_(std::move(x)) {}
  GeneralizedNumber(double c) : rep_(ExactNet::constant(c)) {}

  static GeneralizedNumber parse(std::string_view text) { return parse_exact_net(text); }

  bool is_exact() const { return std::holds_alternative<ExactNet>(rep_); }
  const ExactNet& exact() const { return std::get<ExactNet>(rep_); }
  const SampledNet& sampled() const { return std::get<SampledNet>(rep_); }

  // The grid of a sampled operand, if any.
  const EpsilonGrid* grid() const { return is_exact() ? nullptr : &sampled().grid(); }

  SampledNet to_sampled(const EpsilonGrid& grid) const;
  LogReal log_value_at(const EpsilonGrid& grid, std::size_t i) const;
  double value_at(const EpsilonGrid& grid, std::size_t i) const {
    return log_value_at(grid, i).to_double();
  }

  GeneralizedNumber operator-() const;
  friend GeneralizedNumber operator+(const GeneralizedNumber& a, const GeneralizedNumber& b);
  friend GeneralizedNumber operator-(const GeneralizedNumber& a, const GeneralizedNumber& b);
  friend GeneralizedNumber operator*(const GeneralizedNumber& a, const GeneralizedNumber& b);

 private:
  std::variant<ExactNet, SampledNet> rep_;
};

using GenVec = std::vector<GeneralizedNumber>;

// Division is exact only by a monomial; otherwise it is sampled on `grid`.
GeneralizedNumber divide(const GeneralizedNumber& a, const GeneralizedNumber& b,
                         const EpsilonGrid& grid);
GeneralizedNumber abs(const GeneralizedNumber& x);
GeneralizedNumber sqrt(const GeneralizedNumber& x, const EpsilonGrid& grid);
// Pointwise max/min; exact when both operands are exact.
GeneralizedNumber gmax(const GeneralizedNumber& a, const GeneralizedNumber& b,
                       const EpsilonGrid& grid);
GeneralizedNumber gmin(const GeneralizedNumber& a, const GeneralizedNumber& b,
                       const EpsilonGrid& grid);
// eps^a as an exact number.
inline GeneralizedNumber eps_pow(double a) { return ExactNet::monomial(1.0, a); }
// A net from per-grid-point doubles.
GeneralizedNumber from_samples(const EpsilonGrid& grid, const std::vector<double>& values);

struct Valuation {
  double value = 0.0;     // +inf means negligible
  bool reliable = true;   // false when the tail fit residual is above threshold
  double residual = 0.0;  // RMS residual of the tail fit, natural-log units
  bool negligible() const { return std::isinf(value) && value > 0; }
};

Valuation valuation(const GeneralizedNumber& x, const DecisionConfig& cfg = {});
double e_norm(const GeneralizedNumber& x, const DecisionConfig& cfg = {});
double sharp_distance(const GeneralizedNumber& x, const GeneralizedNumber& y,
                      const DecisionConfig& cfg = {});

struct Positivity {
  Tri decision = Tri::Undecidable;
  // Integer m with x > eps^m eventually, when decision is True.
  std::optional<int> witness;
};

Positivity strictly_positive(const GeneralizedNumber& x, const DecisionConfig& cfg = {});
Tri leq(const GeneralizedNumber& x, const GeneralizedNumber& y, const DecisionConfig& cfg = {});
Tri is_negligible(const GeneralizedNumber& x, const DecisionConfig& cfg = {});
Tri is_infinitesimal(const GeneralizedNumber& x, const DecisionConfig& cfg = {});
Tri is_invertible(const GeneralizedNumber& x, const DecisionConfig& cfg = {});

// Componentwise Euclidean length of a vector of generalized numbers.
GeneralizedNumber norm_squared(const GenVec& v);
GenVec sub(const GenVec& a, const GenVec& b);

// Decides |y - x| < rho.
Tri ball_member_point(const GenVec& y, const GenVec& x, const GeneralizedNumber& rho,
                      const NetConfig& cfg = {});

}  // namespace cgsf
