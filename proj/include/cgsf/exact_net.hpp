#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgsf/log_real.hpp"

namespace cgsf {

// One term coeff * eps^expo of an asymptotic series.
struct AsymptoticTerm {
  double coeff;
  double expo;
  friend bool operator==(const AsymptoticTerm&, const AsymptoticTerm&) = default;
};

// Finite sum of terms with strictly increasing exponents. The first term
// dominates as eps -> 0, so its exponent is the exact valuation. The empty sum
// is the zero class.
class ExactNet {
 public:
  ExactNet() = default;
  explicit ExactNet(std::vector<AsymptoticTerm> terms);

  static ExactNet constant(double c) { return monomial(c, 0.0); }
  static ExactNet monomial(double c, double expo);

  std::span<const AsymptoticTerm> terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  double leading_exponent() const;
  double leading_coeff() const;

  double eval(double eps) const;
  LogReal eval_log(double log_eps) const;

  ExactNet operator-() const;
  friend ExactNet operator+(const ExactNet& a, const ExactNet& b);
  friend ExactNet operator-(const ExactNet& a, const ExactNet& b);
  friend ExactNet operator*(const ExactNet& a, const ExactNet& b);
  friend bool operator==(const ExactNet&, const ExactNet&) = default;

  ExactNet pow(unsigned n) const;

 private:
  std::vector<AsymptoticTerm> terms_;
};

// Parses sums of products of numbers, eps, eps^a and parenthesised groups
// raised to natural powers, e.g. "3*eps^-1 + 5*eps^2" or "(1+eps)^2".
ExactNet parse_exact_net(std::string_view text);
std::string to_string(const ExactNet& x);

}  // namespace cgsf
