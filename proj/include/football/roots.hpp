#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace football::roots {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

/**
 * Bisection on a sign-changing bracket [lo, hi] with f(lo) < 0 < f(hi)
 * (or the reverse). Stops after max_iter halvings, when f hits zero, or when
 * the midpoint can no longer be separated from an endpoint in floating point.
 */
template <class F>
[[nodiscard]] RootResult bisect(F&& f, double lo, double hi, double flo, int max_iter = 2000) {
  RootResult r;
  const bool increasing = flo < 0.0;
  for (r.iterations = 0; r.iterations < max_iter; ++r.iterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) {
      r.converged = true;
      break;
    }
    const double fm = f(mid);
    if (fm == 0.0) {
      r.x = mid;
      r.fx = 0.0;
      r.converged = true;
      return r;
    }
    if ((fm < 0.0) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double flo_final = f(lo);
  const double fhi_final = f(hi);
  if (std::fabs(flo_final) <= std::fabs(fhi_final)) {
    r.x = lo;
    r.fx = flo_final;
  } else {
    r.x = hi;
    r.fx = fhi_final;
  }
  return r;
}

/**
 * Brent's method (inverse quadratic interpolation / secant / bisection) on a
 * certified bracket. x_tol = 0 iterates to machine precision. If the
 * iteration stalls past max_iter, the remaining bracket is finished by
 * bisection, which always terminates on a valid bracket.
 */
template <class F>
[[nodiscard]] RootResult brent(F&& f, double a, double b, double fa, double fb, double x_tol = 0.0,
                               int max_iter = 200) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  RootResult r;
  if (fa == 0.0) return {a, 0.0, 0, true};
  if (fb == 0.0) return {b, 0.0, 0, true};

  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
    if ((fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
    if (std::fabs(fc) < std::fabs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::fabs(b) + 0.5 * x_tol;
    const double xm = 0.5 * (c - b);
    if (std::fabs(xm) <= tol1 || fb == 0.0) {
      r.x = b;
      r.fx = fb;
      r.converged = true;
      return r;
    }
    if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
      double p;
      double q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double rr = fb / fc;
        p = s * (2.0 * xm * qa * (qa - rr) - (b - a) * (rr - 1.0));
        q = (qa - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::fabs(p);
      const double min1 = 3.0 * xm * q - std::fabs(tol1 * q);
      const double min2 = std::fabs(e * q);
      if (2.0 * p < std::min(min1, min2)) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += (std::fabs(d) > tol1) ? d : std::copysign(tol1, xm);
    fb = f(b);
  }

  // Stalled: finish on the surviving bracket [b, c].
  double lo = std::min(b, c);
  double hi = std::max(b, c);
  const double flo = (lo == b) ? fb : fc;
  RootResult fallback = bisect(f, lo, hi, flo);
  fallback.iterations += max_iter;
  return fallback;
}

}  // namespace football::roots
