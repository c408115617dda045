#pragma once

#include <array>

namespace cgsf {

// Truncated Taylor series: c[j] is the j-th Taylor coefficient f^(j)(x0)/j!.
struct Jet {
  static constexpr int kCapacity = 32;
  int n = 1;
  std::array<double, kCapacity> c{};

  static Jet constant(double v, int n);
  // The identity x0 + h.
  static Jet variable(double x0, int n);
  // j-th derivative f^(j)(x0).
  double derivative(int j) const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet scale(const Jet& a, double s);
Jet add_constant(const Jet& a, double s);

Jet jet_exp(const Jet& a);
Jet jet_log(const Jet& a);
Jet jet_pow(const Jet& a, double p);
Jet jet_sin(const Jet& a);
Jet jet_cos(const Jet& a);
Jet jet_tanh(const Jet& a);

// bump(t) = exp(1 - 1/(1-t^2)) on |t| < 1 and 0 elsewhere; bump(0) = 1.
Jet jet_bump(const Jet& a);
// step(t) = psi(t)/(psi(t)+psi(1-t)), psi(s) = exp(-1/s) for s > 0: 0 for t <= 0, 1 for t >= 1.
Jet jet_step(const Jet& a);
// plateau(t) = step(2 - 2|t|): 1 on |t| <= 1/2 and 0 on |t| >= 1.
Jet jet_plateau(const Jet& a);

enum class Primitive { Bump, Plateau, Step };

// Taylor series of the k-th derivative of a primitive composed with a.
Jet jet_primitive(Primitive p, int k, const Jet& a);
double primitive_value(Primitive p, int k, double t);

double factorial(int n);

}  // namespace cgsf
