#include "cgsf/log_real.hpp"

#include <utility>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

LogReal checked(int sign, double lg) {
  if (std::isnan(lg)) throw MagnitudeOverflow("log-domain value is NaN");
  if (lg > LogReal::kMaxLog) throw MagnitudeOverflow("log-magnitude exceeds 700");
  return LogReal(sign, lg);
}

}  // namespace

LogReal::LogReal(int sign, double log_magnitude) : sign_(sign), log_(log_magnitude) {
  if (sign_ == 0 || (std::isinf(log_magnitude) && log_magnitude < 0)) {
    sign_ = 0;
    log_ = -std::numeric_limits<double>::infinity();
  } else {
    sign_ = sign_ > 0 ? 1 : -1;
  }
}

LogReal LogReal::from_double(double v) {
  if (v == 0.0) return LogReal();
  if (!std::isfinite(v)) throw MagnitudeOverflow("non-finite value cannot enter log domain");
  return LogReal(v > 0 ? 1 : -1, std::log(std::fabs(v)));
}

double LogReal::to_double() const {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_);
}

LogReal LogReal::operator-() const { return LogReal(-sign_, log_); }

LogReal LogReal::abs() const { return LogReal(sign_ == 0 ? 0 : 1, log_); }

LogReal operator+(const LogReal& a, const LogReal& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  const LogReal& big = a.log_ >= b.log_ ? a : b;
  const LogReal& small = a.log_ >= b.log_ ? b : a;
  double d = small.log_ - big.log_;  // <= 0
  if (big.sign_ == small.sign_) return checked(big.sign_, big.log_ + std::log1p(std::exp(d)));
  if (d == 0.0) return LogReal();
  // |big| - |small| = |big| * (-expm1(d)), accurate even when d is tiny.
  return checked(big.sign_, big.log_ + std::log(-std::expm1(d)));
}

LogReal operator-(const LogReal& a, const LogReal& b) { return a + (-b); }

LogReal operator*(const LogReal& a, const LogReal& b) {
  if (a.sign_ == 0 || b.sign_ == 0) return LogReal();
  return checked(a.sign_ * b.sign_, a.log_ + b.log_);
}

LogReal operator/(const LogReal& a, const LogReal& b) {
  if (b.sign_ == 0) throw MagnitudeOverflow("division by an exact zero sample");
  if (a.sign_ == 0) return LogReal();
  return checked(a.sign_ * b.sign_, a.log_ - b.log_);
}

LogReal LogReal::sqrt() const {
  if (sign_ < 0) throw MagnitudeOverflow("square root of a negative sample");
  return LogReal(sign_, log_ / 2.0);
}

int compare(const LogReal& a, const LogReal& b) {
  if (a.sign() != b.sign()) return a.sign() < b.sign() ? -1 : 1;
  if (a.sign() == 0) return 0;
  if (a.log_magnitude() == b.log_magnitude()) return 0;
  bool larger_mag = a.log_magnitude() > b.log_magnitude();
  return (larger_mag == (a.sign() > 0)) ? 1 : -1;
}

}  // namespace cgsf
