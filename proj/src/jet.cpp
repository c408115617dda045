#include "cgsf/jet.hpp"

#include <algorithm>
#include <cmath>

#include "cgsf/errors.hpp"

namespace cgsf {

namespace {

int common_n(const Jet& a, const Jet& b) { return std::min(a.n, b.n); }

Jet zero_jet(int n) { return Jet::constant(0.0, n); }

// Taylor series of a primitive around the scalar a.c[0], as a function of h.
Jet primitive_series(Primitive p, double t0, int len) {
  Jet t = Jet::variable(t0, len);
  switch (p) {
    case Primitive::Bump: return jet_bump(t);
    case Primitive::Plateau: return jet_plateau(t);
    case Primitive::Step: return jet_step(t);
  }
  return zero_jet(len);
}

}  // namespace

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Jet Jet::constant(double v, int n) {
  Jet j;
  j.n = n;
  j.c[0] = v;
  return j;
}

Jet Jet::variable(double x0, int n) {
  Jet j = constant(x0, n);
  if (n > 1) j.c[1] = 1.0;
  return j;
}

double Jet::derivative(int j) const { return c[j] * factorial(j); }

Jet operator+(const Jet& a, const Jet& b) {
  Jet r;
  r.n = common_n(a, b);
  for (int j = 0; j < r.n; ++j) r.c[j] = a.c[j] + b.c[j];
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r;
  r.n = common_n(a, b);
  for (int j = 0; j < r.n; ++j) r.c[j] = a.c[j] - b.c[j];
  return r;
}

Jet operator-(const Jet& a) { return scale(a, -1.0); }

Jet scale(const Jet& a, double s) {
  Jet r;
  r.n = a.n;
  for (int j = 0; j < r.n; ++j) r.c[j] = a.c[j] * s;
  return r;
}

Jet add_constant(const Jet& a, double s) {
  Jet r = a;
  r.c[0] += s;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.n = common_n(a, b);
  for (int j = 0; j < r.n; ++j) {
    double s = 0;
    for (int i = 0; i <= j; ++i) s += a.c[i] * b.c[j - i];
    r.c[j] = s;
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b.c[0] == 0.0) throw EvalDomainError("division by zero");
  Jet r;
  r.n = common_n(a, b);
  for (int j = 0; j < r.n; ++j) {
    double s = a.c[j];
    for (int i = 1; i <= j; ++i) s -= b.c[i] * r.c[j - i];
    r.c[j] = s / b.c[0];
  }
  return r;
}

Jet jet_exp(const Jet& a) {
  Jet r;
  r.n = a.n;
  r.c[0] = std::exp(a.c[0]);
  for (int j = 1; j < r.n; ++j) {
    double s = 0;
    for (int i = 1; i <= j; ++i) s += i * a.c[i] * r.c[j - i];
    r.c[j] = s / j;
  }
  return r;
}

Jet jet_log(const Jet& a) {
  if (!(a.c[0] > 0.0)) throw EvalDomainError("log of a nonpositive value");
  Jet r;
  r.n = a.n;
  r.c[0] = std::log(a.c[0]);
  for (int j = 1; j < r.n; ++j) {
    double s = 0;
    for (int i = 1; i < j; ++i) s += i * r.c[i] * a.c[j - i];
    r.c[j] = (a.c[j] - s / j) / a.c[0];
  }
  return r;
}

Jet jet_pow(const Jet& a, double p) {
  if (p == 0.0) return Jet::constant(1.0, a.n);
  if (p == std::floor(p) && std::fabs(p) <= 64) {
    long k = static_cast<long>(std::fabs(p));
    Jet result = Jet::constant(1.0, a.n);
    Jet base = a;
    while (k > 0) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    if (p < 0) return Jet::constant(1.0, a.n) / result;
    return result;
  }
  if (!(a.c[0] > 0.0)) throw EvalDomainError("non-integer power of a nonpositive value");
  Jet r;
  r.n = a.n;
  r.c[0] = std::pow(a.c[0], p);
  for (int j = 1; j < r.n; ++j) {
    double s = 0;
    for (int i = 1; i <= j; ++i) s += (p * i - (j - i)) * a.c[i] * r.c[j - i];
    r.c[j] = s / (j * a.c[0]);
  }
  return r;
}

namespace {

void sin_cos(const Jet& a, Jet& s, Jet& c) {
  s.n = c.n = a.n;
  s.c[0] = std::sin(a.c[0]);
  c.c[0] = std::cos(a.c[0]);
  for (int j = 1; j < a.n; ++j) {
    double ss = 0, cc = 0;
    for (int i = 1; i <= j; ++i) {
      ss += i * a.c[i] * c.c[j - i];
      cc += i * a.c[i] * s.c[j - i];
    }
    s.c[j] = ss / j;
    c.c[j] = -cc / j;
  }
}

}  // namespace

Jet jet_sin(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return s;
}

Jet jet_cos(const Jet& a) {
  Jet s, c;
  sin_cos(a, s, c);
  return c;
}

Jet jet_tanh(const Jet& a) {
  Jet t, u;
  t.n = u.n = a.n;
  t.c[0] = std::tanh(a.c[0]);
  u.c[0] = 1.0 - t.c[0] * t.c[0];
  for (int j = 1; j < a.n; ++j) {
    double s = 0;
    for (int i = 1; i <= j; ++i) s += i * a.c[i] * u.c[j - i];
    t.c[j] = s / j;
    double q = 0;
    for (int l = 0; l <= j; ++l) q += t.c[l] * t.c[j - l];
    u.c[j] = -q;
  }
  return t;
}

Jet jet_bump(const Jet& a) {
  if (std::fabs(a.c[0]) >= 1.0) return zero_jet(a.n);
  Jet inner = add_constant(-(a * a), 1.0);  // 1 - t^2 > 0
  Jet e = jet_exp(add_constant(-(Jet::constant(1.0, a.n) / inner), 1.0));
  if (e.c[0] == 0.0) return zero_jet(a.n);
  return e;
}

Jet jet_step(const Jet& a) {
  if (a.c[0] <= 0.0) return zero_jet(a.n);
  if (a.c[0] >= 1.0) return Jet::constant(1.0, a.n);
  Jet one = Jet::constant(1.0, a.n);
  Jet left = jet_exp(-(one / a));
  Jet right = jet_exp(-(one / add_constant(-a, 1.0)));
  if (left.c[0] == 0.0) return zero_jet(a.n);
  if (right.c[0] == 0.0) return one;
  return left / (left + right);
}

Jet jet_plateau(const Jet& a) {
  double t = a.c[0];
  if (std::fabs(t) >= 1.0) return zero_jet(a.n);
  if (std::fabs(t) <= 0.5) return Jet::constant(1.0, a.n);
  Jet arg = t > 0 ? add_constant(scale(a, -2.0), 2.0) : add_constant(scale(a, 2.0), 2.0);
  return jet_step(arg);
}

Jet jet_primitive(Primitive p, int k, const Jet& a) {
  if (k == 0) {
    switch (p) {
      case Primitive::Bump: return jet_bump(a);
      case Primitive::Plateau: return jet_plateau(a);
      case Primitive::Step: return jet_step(a);
    }
  }
  int len = k + a.n;
  if (len > Jet::kCapacity) throw PreconditionError("derivative order exceeds the jet capacity");
  Jet series = primitive_series(p, a.c[0], len);
  // d_j = Taylor coefficients of the k-th derivative around a.c[0].
  std::array<double, Jet::kCapacity> d{};
  for (int j = 0; j < a.n; ++j) {
    double f = 1.0;
    for (int m = j + 1; m <= j + k; ++m) f *= m;
    d[j] = series.c[j + k] * f;
  }
  Jet h = a;
  h.c[0] = 0.0;
  Jet r = Jet::constant(d[a.n - 1], a.n);
  for (int j = a.n - 2; j >= 0; --j) r = add_constant(r * h, d[j]);
  return r;
}

double primitive_value(Primitive p, int k, double t) {
  return jet_primitive(p, k, Jet::constant(t, 1)).c[0];
}

}  // namespace cgsf
