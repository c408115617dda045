#pragma once

#include <cmath>
#include <limits>

namespace cgsf {

// A real number stored as sign and natural log of its magnitude, so that nets
// like eps^-20 or exp(-1/eps) stay representable at eps = 2^-48.
class LogReal {
 public:
  static constexpr double kMaxLog = 700.0;

  constexpr LogReal() = default;
  LogReal(int sign, double log_magnitude);

  static LogReal from_double(double v);
  static LogReal zero() { return LogReal(); }

  int sign() const { return sign_; }
  double log_magnitude() const { return log_; }
  bool is_zero() const { return sign_ == 0; }
  double to_double() const;

  LogReal operator-() const;
  LogReal abs() const;
  friend LogReal operator+(const LogReal& a, const LogReal& b);
  friend LogReal operator-(const LogReal& a, const LogReal& b);
  friend LogReal operator*(const LogReal& a, const LogReal& b);
  friend LogReal operator/(const LogReal& a, const LogReal& b);
  friend bool operator==(const LogReal& a, const LogReal& b) = default;

  LogReal sqrt() const;

 private:
  int sign_ = 0;
  double log_ = -std::numeric_limits<double>::infinity();
};

// Compares a against b by value.
int compare(const LogReal& a, const LogReal& b);

}  // namespace cgsf
