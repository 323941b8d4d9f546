#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "football/error.hpp"
#include "football/roots.hpp"
#include "football/special.hpp"

namespace football {

inline constexpr double kDefaultRootTolerance = 1e-12;

/**
 * Cone-angle fractions (beta1, beta2) of a football: cone angle 2*pi*beta1 at
 * the north pole (tau = 0) and 2*pi*beta2 at the south pole
 * (tau = beta1 + beta2). Always stored with beta1 <= beta2; swapped() records
 * whether the caller's order was reversed.
 */
class ConeAngles {
 public:
  ConeAngles(double beta1, double beta2) {
    require(std::isfinite(beta1) && std::isfinite(beta2) && beta1 > 0.0 && beta2 > 0.0 && beta1 <= 1.0 &&
                beta2 <= 1.0,
            ErrorCode::AngleOutOfRange,
            "cone-angle fractions must lie in (0, 1], got (" + num(beta1) + ", " +
                num(beta2) + ")");
    if (beta1 > beta2) {
      std::swap(beta1, beta2);
      swapped_ = true;
    }
    beta1_ = beta1;
    beta2_ = beta2;
  }

  [[nodiscard]] double beta1() const noexcept { return beta1_; }
  [[nodiscard]] double beta2() const noexcept { return beta2_; }
  [[nodiscard]] double sum() const noexcept { return beta1_ + beta2_; }
  [[nodiscard]] double ratio() const noexcept { return beta1_ / beta2_; }
  [[nodiscard]] bool swapped() const noexcept { return swapped_; }
  [[nodiscard]] bool symmetric() const noexcept { return beta1_ == beta2_; }

  friend bool operator==(const ConeAngles& x, const ConeAngles& y) noexcept {
    return x.beta1_ == y.beta1_ && x.beta2_ == y.beta2_;
  }

 private:
  double beta1_ = 1.0;
  double beta2_ = 1.0;
  bool swapped_ = false;
};

/// Certified bracket for the positive root of F (see bracket_root).
struct RootBracket {
  double x_star = 0.0;  // inflection point of F
  double x0 = 0.0;      // unique positive critical point of F
  double lo = 0.0;
  double hi = 0.0;
  double f_lo = 0.0;
  double f_hi = 0.0;
};

/**
 * A solved football: cone angles plus the soliton coefficient a, the slope of
 * the soliton potential h(tau) = a*tau. a = 0 exactly on the constant
 * curvature branch beta1 = beta2.
 *
 * The defect 1 - a*beta1 is kept separately, computed from the identity
 * 1 - a*beta1 = (1 + a*beta2) exp(-a(beta1+beta2)) that holds at the root.
 * It stays accurate when a*beta1 is within rounding of 1.
 */
class SolitonProfile {
 public:
  SolitonProfile(ConeAngles angles, double a) : angles_(angles), a_(a) {
    require(std::isfinite(a) && a >= 0.0, ErrorCode::DomainError, "soliton coefficient must be finite and >= 0");
    defect_ = (a == 0.0) ? 1.0 : (1.0 + a * angles_.beta2()) * std::exp(-a * angles_.sum());
  }

  [[nodiscard]] const ConeAngles& angles() const noexcept { return angles_; }
  [[nodiscard]] double a() const noexcept { return a_; }
  [[nodiscard]] double h_slope() const noexcept { return a_; }
  [[nodiscard]] double beta1() const noexcept { return angles_.beta1(); }
  [[nodiscard]] double beta2() const noexcept { return angles_.beta2(); }
  /// Right end of the moment interval [0, beta1 + beta2].
  [[nodiscard]] double length() const noexcept { return angles_.sum(); }
  [[nodiscard]] bool constant_curvature() const noexcept { return a_ == 0.0; }

  /// 1 - a*beta1, accurate to relative precision.
  [[nodiscard]] double defect() const noexcept { return defect_; }
  [[nodiscard]] double a_beta1() const noexcept { return a_ == 0.0 ? 0.0 : 1.0 - defect_; }
  [[nodiscard]] double a_beta2() const noexcept { return a_ * angles_.beta2(); }
  /// sup of the Gaussian curvature, attained at the south pole.
  [[nodiscard]] double curvature_sup() const noexcept { return 1.0 + a_beta2(); }

 private:
  ConeAngles angles_;
  double a_ = 0.0;
  double defect_ = 1.0;
};

/// F(x) = beta1 x - 1 + (x beta2 + 1) exp(-x (beta1 + beta2)).
[[nodiscard]] inline double eval_F(double x, const ConeAngles& angles) {
  require(x >= 0.0, ErrorCode::DomainError, "eval_F requires x >= 0");
  const double b1 = angles.beta1();
  const double b2 = angles.beta2();
  const double s = angles.sum();
  const double sx = s * x;
  if (sx <= 1.0) {
    // Factored form: F = S x^2 [S exprel2(-Sx) - beta2 exprel(-Sx)], exact zero at x = 0.
    return s * x * x * (s * special::exprel2(-sx) - b2 * special::exprel(-sx));
  }
  return std::fma(b1, x, -1.0) + (x * b2 + 1.0) * std::exp(-sx);
}

/// F'(x) = beta1 - (beta1 + x beta2 (beta1 + beta2)) exp(-x (beta1 + beta2)).
[[nodiscard]] inline double eval_F_prime(double x, const ConeAngles& angles) {
  require(x >= 0.0, ErrorCode::DomainError, "eval_F_prime requires x >= 0");
  const double b1 = angles.beta1();
  const double b2 = angles.beta2();
  const double s = angles.sum();
  const double sx = s * x;
  if (sx <= 1.0) {
    return sx * (b1 * special::exprel(-sx) - b2 * std::exp(-sx));
  }
  return b1 - (b1 + x * b2 * s) * std::exp(-sx);
}

/// Zero of F'': F is concave below it and convex above.
[[nodiscard]] inline double inflection_point(const ConeAngles& angles) {
  require(!angles.symmetric(), ErrorCode::DegenerateAngles, "inflection point undefined for beta1 == beta2");
  const double b1 = angles.beta1();
  const double b2 = angles.beta2();
  return (b2 - b1) / (b2 * (b1 + b2));
}

/**
 * Locates the critical point x0 of F (root of F' on [x_star, Y], with Y
 * doubled from x_star until F'(Y) > 0) and returns the bracket
 * [x0, 1/beta1] for the positive root of F.
 */
[[nodiscard]] inline RootBracket bracket_root(const ConeAngles& angles) {
  RootBracket br;
  br.x_star = inflection_point(angles);
  auto fprime = [&angles](double x) { return eval_F_prime(x, angles); };
  const double fp_star = fprime(br.x_star);
  require(fp_star < 0.0, ErrorCode::BracketFailure, "F' is not negative at the inflection point");

  double y = 2.0 * br.x_star;
  double fp_y = fprime(y);
  for (int i = 0; fp_y <= 0.0; ++i) {
    require(i < 2000 && std::isfinite(y), ErrorCode::BracketFailure, "no sign change of F' found");
    y *= 2.0;
    fp_y = fprime(y);
  }
  const roots::RootResult crit = roots::brent(fprime, br.x_star, y, fp_star, fp_y);
  br.x0 = crit.x;

  auto f = [&angles](double x) { return eval_F(x, angles); };
  br.lo = br.x0;
  br.f_lo = f(br.lo);
  require(br.f_lo < 0.0, ErrorCode::BracketFailure, "F(x0) is not negative");
  br.hi = 1.0 / angles.beta1();
  br.f_hi = f(br.hi);
  require(br.hi > br.lo, ErrorCode::BracketFailure, "critical point lies beyond 1/beta1");
  return br;
}

/**
 * Unique root a in (x0, 1/beta1] of F, or a = 0 when beta1 == beta2. The root
 * is iterated to machine precision; tol bounds |F(a)|.
 */
[[nodiscard]] inline SolitonProfile solve_coefficient(const ConeAngles& angles,
                                                      double tol = kDefaultRootTolerance) {
  require(tol > 0.0, ErrorCode::DomainError, "root tolerance must be positive");
  if (angles.symmetric()) return SolitonProfile(angles, 0.0);

  const RootBracket br = bracket_root(angles);
  if (br.f_hi <= 0.0) {
    // F(1/beta1) = (beta2/beta1 + 1) exp(-(beta1+beta2)/beta1) underflows far
    // into the cigar regime; the bracket end is then a root to working precision.
    require(std::fabs(br.f_hi) <= tol, ErrorCode::BracketFailure,
            "F(1/beta1) < 0: sign condition violated");
    return SolitonProfile(angles, br.hi);
  }
  auto f = [&angles](double x) { return eval_F(x, angles); };
  const roots::RootResult root = roots::brent(f, br.lo, br.hi, br.f_lo, br.f_hi);
  require(root.converged && std::fabs(root.fx) <= tol, ErrorCode::BracketFailure,
          "root of F not resolved to tolerance");
  return SolitonProfile(angles, root.x);
}

namespace detail {

inline void check_tau(double tau, const SolitonProfile& p) {
  if (!(tau >= 0.0 && tau <= p.length())) {
    fail(ErrorCode::DomainError, "tau = " + num(tau) + " outside [0, " + num(p.length()) + "]");
  }
}

}  // namespace detail

/**
 * Moment profile phi(tau). Every branch only exponentiates non-positive
 * arguments (or arguments bounded by 1), so it is safe for a up to the
 * overflow range of 1/beta1.
 *
 *  - south half: phi = beta2 w exprel(-a w) - w^2 exprel2(-a w), w = S - tau
 *  - north half, a S <= 1: phi = tau [beta1 exprel(a tau) - tau exprel2(a tau)]
 *  - north half, a S > 1: phi = (tau/a) [1 - (1 + a beta2) e^{-a w} exprel(-a tau)]
 */
[[nodiscard]] inline double phi(double tau, const SolitonProfile& p) {
  detail::check_tau(tau, p);
  const double a = p.a();
  const double b1 = p.beta1();
  const double b2 = p.beta2();
  const double s = p.length();
  if (a == 0.0) return b1 * tau - 0.5 * tau * tau;

  const double w = s - tau;
  if (tau >= 0.5 * s) {
    const double u = a * w;
    return b2 * w * special::exprel(-u) - w * w * special::exprel2(-u);
  }
  if (a * s <= 1.0) {
    const double x = a * tau;
    return tau * (b1 * special::exprel(x) - tau * special::exprel2(x));
  }
  return (tau / a) * (1.0 - (1.0 + a * b2) * std::exp(-a * w) * special::exprel(-a * tau));
}

/// phi'(tau), from a phi' = 1 - (1 + a beta2) e^{-a(S - tau)}.
[[nodiscard]] inline double phi_prime(double tau, const SolitonProfile& p) {
  detail::check_tau(tau, p);
  const double a = p.a();
  if (a == 0.0) return p.beta1() - tau;
  const double w = p.length() - tau;
  const double u = a * w;
  return w * special::exprel(-u) - p.beta2() * std::exp(-u);
}

/// Derivative of phi of any order; order >= 2 is -(1 + a beta2) a^{order-2} e^{-a(S - tau)}.
[[nodiscard]] inline double phi_derivative(double tau, const SolitonProfile& p, int order) {
  require(order >= 0, ErrorCode::DomainError, "derivative order must be >= 0");
  if (order == 0) return phi(tau, p);
  if (order == 1) return phi_prime(tau, p);
  detail::check_tau(tau, p);
  const double a = p.a();
  if (a == 0.0) return order == 2 ? -1.0 : 0.0;
  const double u = a * (p.length() - tau);
  return -(1.0 + a * p.beta2()) * std::pow(a, order - 2) * std::exp(-u);
}

/// Gaussian curvature K = -phi'' = (1 + a beta2) e^{-a(S - tau)}.
[[nodiscard]] inline double curvature(double tau, const SolitonProfile& p) {
  return -phi_derivative(tau, p, 2);
}

/// phi'' - a phi' + 1 from the closed forms.
[[nodiscard]] inline double ode_residual(double tau, const SolitonProfile& p) {
  return phi_derivative(tau, p, 2) - p.a() * phi_prime(tau, p) + 1.0;
}

}  // namespace football
