#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library: every value is recomputed from the literal formulas.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

inline double F(double x, double b1, double b2) { return b1 * x - 1.0 + (x * b2 + 1.0) * std::exp(-x * (b1 + b2)); }

inline double F_prime(double x, double b1, double b2) {
  return b1 - (b1 + x * b2 * (b1 + b2)) * std::exp(-x * (b1 + b2));
}

/// 128 halvings of [lo, hi]; f(lo) and f(hi) must differ in sign.
inline double bisect128(const std::function<double(double)>& f, double lo, double hi) {
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < 128; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Critical point of F: bisect F' on [x_star, Y], Y doubled until F'(Y) > 0.
inline double critical_point(double b1, double b2) {
  const double x_star = (b2 - b1) / (b2 * (b1 + b2));
  double y = 2.0 * x_star;
  while (F_prime(y, b1, b2) <= 0.0) y *= 2.0;
  return bisect128([=](double x) { return F_prime(x, b1, b2); }, x_star, y);
}

/// Positive root of F by bisection on [x0, 1/beta1].
inline double coefficient(double b1, double b2) {
  if (b1 == b2) return 0.0;
  return bisect128([=](double x) { return F(x, b1, b2); }, critical_point(b1, b2), 1.0 / b1);
}

/// Textbook closed form (a > 0): (a b1 - 1)(e^{a tau} - 1)/a^2 + tau/a, in long double
/// since the two terms cancel near the south pole.
inline double phi(double tau, double a, double b1) {
  const long double A = a;
  const long double t = tau;
  return static_cast<double>((A * b1 - 1.0L) * std::expm1(A * t) / (A * A) + t / A);
}

/// Root of F refined by Newton in long double, starting from the bisection oracle.
inline long double coefficient_long(double b1, double b2) {
  long double a = coefficient(b1, b2);
  if (a == 0.0L) return a;
  const long double S = static_cast<long double>(b1) + b2;
  for (int i = 0; i < 6; ++i) {
    const long double e = std::exp(-a * S);
    const long double f = b1 * a - 1.0L + (a * b2 + 1.0L) * e;
    const long double df = b1 + b2 * e - S * (a * b2 + 1.0L) * e;
    a -= f / df;
  }
  return a;
}

/// Textbook form evaluated with the long-double root; conditioning in a is poor near the south pole.
inline double phi_exact(double tau, double b1, double b2) {
  const long double a = coefficient_long(b1, b2);
  const long double t = tau;
  return static_cast<double>((a * b1 - 1.0L) * std::expm1(a * t) / (a * a) + t / a);
}

/**
 * Classical RK4 for phi'' = a phi' - 1 from (phi, phi')(0) = (0, beta1),
 * `steps` uniform steps up to tau_end. Returns the (phi, phi') samples at
 * every step, index 0 being tau = 0.
 */
inline std::vector<std::pair<double, double>> rk4(double a, double b1, double tau_end, int steps) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  double y = 0.0;
  double v = b1;
  const double h = tau_end / steps;
  out.emplace_back(y, v);
  auto acc = [a](double vel) { return a * vel - 1.0; };
  for (int i = 0; i < steps; ++i) {
    const double k1y = v;
    const double k1v = acc(v);
    const double k2y = v + 0.5 * h * k1v;
    const double k2v = acc(v + 0.5 * h * k1v);
    const double k3y = v + 0.5 * h * k2v;
    const double k3v = acc(v + 0.5 * h * k2v);
    const double k4y = v + h * k3v;
    const double k4v = acc(v + h * k3v);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    out.emplace_back(y, v);
  }
  return out;
}

inline double central_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_diff(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

/// Root b of F_{c,1}(x) = c x - 1 + (x + 1) e^{-x(1 + c)} in (x0, 1/c).
inline double cylinder_b(double c) { return coefficient(c, 1.0); }

inline double cylinder_B(double b) { return 1.0 - (1.0 + b) * std::exp(-b); }

}  // namespace oracle
