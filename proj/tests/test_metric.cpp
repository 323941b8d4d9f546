#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "football/metric.hpp"
#include "oracles.hpp"

using football::Chart;
using football::ChartContext;
using football::ChartPoint;
using football::ConeAngles;
using football::Error;
using football::ErrorCode;
using football::SolitonProfile;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected football::Error";
  return ErrorCode::InvalidPath;
}

SolitonProfile solved(double b1, double b2) { return football::solve_coefficient(ConeAngles(b1, b2)); }

}  // namespace

TEST(FootballMetric, VolumeFormIsUnitInMomentChart) {
  const auto m = football::football_metric(solved(0.2, 0.8));
  EXPECT_TRUE(m.closed_lo);
  EXPECT_TRUE(m.closed_hi);
  EXPECT_EQ(m.chart, Chart::tau);
  for (int i = 1; i < 100; ++i) {
    const double t = i / 100.0;
    EXPECT_NEAR(m.g_tt(t).value * m.g_thth(t).value, 1.0, 1e-14);
  }
}

TEST(FootballMetric, RoundSphereEquator) {
  const auto m = football::football_metric(solved(1.0, 1.0));
  EXPECT_EQ(m.g_thth(1.0).value, 1.0);
  EXPECT_EQ(m.hi, 2.0);
}

TEST(FootballMetric, FiberCoefficientIsTwicePhi) {
  const SolitonProfile p = solved(0.2, 0.8);
  const auto m = football::football_metric(p);
  for (int i = 0; i <= 50; ++i) {
    const double t = i / 50.0;
    EXPECT_EQ(m.g_thth(t).value, 2.0 * football::phi(t, p));
  }
}

TEST(FootballMetric, JetDerivativesMatchFiniteDifferences) {
  const auto m = football::football_metric(solved(0.3, 0.9));
  for (double t : {0.2, 0.6, 1.0}) {
    auto gtt = [&](double x) { return m.g_tt(x).value; };
    auto gth = [&](double x) { return m.g_thth(x).value; };
    EXPECT_NEAR(m.g_tt(t).d1, oracle::central_diff(gtt, t, 1e-5), 1e-6 * std::fabs(m.g_tt(t).d1) + 1e-8);
    EXPECT_NEAR(m.g_tt(t).d2, oracle::second_diff(gtt, t, 1e-4), 1e-4 * std::fabs(m.g_tt(t).d2) + 1e-5);
    EXPECT_NEAR(m.g_thth(t).d1, oracle::central_diff(gth, t, 1e-5), 1e-8);
    EXPECT_NEAR(m.g_thth(t).d2, oracle::second_diff(gth, t, 1e-4), 1e-5);
  }
}

TEST(FootballMetric, WarpedProductCurvatureEqualsMinusPhiSecond) {
  for (auto [b1, b2] : {std::pair{0.2, 0.8}, std::pair{0.05, 0.95}, std::pair{0.5, 1.0}, std::pair{1.0, 1.0}}) {
    const SolitonProfile p = solved(b1, b2);
    const auto m = football::football_metric(p);
    for (int i = 1; i < 40; ++i) {
      const double t = p.length() * i / 40.0;
      const double k = football::curvature(t, p);
      EXPECT_NEAR(football::gaussian_curvature(m, t), k, 1e-9 * k) << b1 << ' ' << b2 << ' ' << t;
    }
  }
}

TEST(CigarMetric, CartesianFormAtUnitAngle) {
  const auto m = football::cigar_metric(1.0);
  for (double x : {-2.0, -0.3, 0.7, 3.0}) {
    for (double y : {-1.0, 0.4, 2.5}) {
      const double r = std::hypot(x, y);
      const double conformal = 1.0 / (1.0 + x * x + y * y);
      EXPECT_NEAR(m.g_tt(r).value, conformal, 1e-14);
      EXPECT_NEAR(m.g_thth(r).value / (r * r), conformal, 1e-14);
    }
  }
}

TEST(CigarMetric, UnitRadiusAndAsymptoticCylinder) {
  for (double beta : {0.0, 0.3, 1.0}) {
    const auto m = football::cigar_metric(beta);
    EXPECT_EQ(m.g_tt(1.0).value, 0.5);
    EXPECT_EQ(m.g_thth(1.0).value, beta * beta / 2.0);
    EXPECT_NEAR(m.g_thth(1e8).value, beta * beta, 1e-15);
    EXPECT_EQ(m.collapsed_fiber, beta == 0.0);
    EXPECT_TRUE(m.closed_lo);
    EXPECT_FALSE(m.closed_hi);
    EXPECT_FALSE(m.finite_domain());
  }
}

TEST(CigarMetric, CurvatureOfCigar) {
  // (dr^2 + beta^2 r^2 dtheta^2)/(1 + r^2) has K = 2/(1 + r^2) for every beta > 0.
  for (double beta : {0.3, 1.0}) {
    const auto m = football::cigar_metric(beta);
    for (double r : {0.1, 0.5, 1.0, 4.0}) {
      EXPECT_NEAR(football::gaussian_curvature(m, r), 2.0 / (1.0 + r * r), 1e-13);
    }
  }
  EXPECT_EQ(code_of([] { (void)football::gaussian_curvature(football::cigar_metric(0.0), 1.0); }),
            ErrorCode::DomainError);
}

TEST(CigarMetric, RejectsAngleOutsideUnitInterval) {
  EXPECT_EQ(code_of([] { (void)football::cigar_metric(-0.1); }), ErrorCode::AngleOutOfRange);
  EXPECT_EQ(code_of([] { (void)football::cigar_metric(1.5); }), ErrorCode::AngleOutOfRange);
}

TEST(CigarMomentProfile, SteadySolitonEquationAndBoundaryValues) {
  for (double beta : {0.1, 0.3, 1.0}) {
    for (double tau : {-5.0, -1.0, 0.0, 0.5 * beta, beta}) {
      const football::Jet j = football::cigar_moment_jet(tau, beta);
      EXPECT_LE(std::fabs(j.d2 - j.d1 / beta), 1e-14);
    }
    EXPECT_EQ(football::cigar_moment_profile(beta, beta), 0.0);
    EXPECT_EQ(football::cigar_moment_jet(beta, beta).d1, -beta);
  }
  EXPECT_NEAR(football::cigar_moment_profile(0.0, 1.0), 1.0 - std::exp(-1.0), 1e-16);
  EXPECT_EQ(code_of([] { (void)football::cigar_moment_profile(1.01, 1.0); }), ErrorCode::DomainError);
}

TEST(CigarMomentProfile, InducesCigarMetricThroughVariableChain) {
  // u = log(1 + r^2), tau = beta - beta u: the cigar becomes half of
  // (1/2phi) dtau^2 + 2phi dtheta^2 with phi the cigar moment profile.
  for (double beta : {0.3, 1.0}) {
    const auto m = football::cigar_metric(beta);
    for (int i = 1; i <= 40; ++i) {
      const double r = 0.1 * i;
      const double u = std::log1p(r * r);
      const double tau = beta - beta * u;
      const double dtau_dr = -beta * 2.0 * r / (1.0 + r * r);
      const double g_tautau = m.g_tt(r).value / (dtau_dr * dtau_dr);
      const double f = football::cigar_moment_profile(tau, beta);
      EXPECT_NEAR(g_tautau / (0.5 / (2.0 * f)), 1.0, 1e-12) << r;
      EXPECT_NEAR(m.g_thth(r).value / (0.5 * 2.0 * f), 1.0, 1e-12) << r;
    }
  }
}

TEST(CylinderMetric, FlatProductAndLogChartPullBack) {
  const auto m = football::cylinder_metric();
  for (double v : {-3.0, 0.0, 2.0}) {
    EXPECT_EQ(m.g_tt(v).value, 1.0);
    EXPECT_EQ(m.g_thth(v).value, 1.0);
    EXPECT_EQ(football::gaussian_curvature(m, v), 0.0);
    for (double th : {0.0, 1.0, 4.0}) {
      // x = e^v cos(theta), y = e^v sin(theta): |d/dv|^2 / (x^2 + y^2) and |d/dtheta|^2 / (x^2 + y^2).
      const double x = std::exp(v) * std::cos(th);
      const double y = std::exp(v) * std::sin(th);
      const double rr = x * x + y * y;
      EXPECT_NEAR((x * x + y * y) / rr, 1.0, 1e-15);
      const double xt = -y;
      const double yt = x;
      EXPECT_NEAR((xt * xt + yt * yt) / rr, 1.0, 1e-15);
      EXPECT_NEAR((x * xt + y * yt) / rr, 0.0, 1e-15);
    }
  }
}

TEST(Rescale, ScalesCoefficientsAndCurvature) {
  const auto m = football::football_metric(solved(0.2, 0.8));
  const auto same = football::rescale(m, 1.0);
  EXPECT_EQ(same.g_tt(0.4).value, m.g_tt(0.4).value);
  EXPECT_EQ(same.g_thth(0.4).value, m.g_thth(0.4).value);
  for (double lambda : {0.25, 3.0, 1e4}) {
    const auto s = football::rescale(m, lambda);
    for (double t : {0.1, 0.5, 0.9}) {
      EXPECT_NEAR(football::gaussian_curvature(s, t), football::gaussian_curvature(m, t) / lambda,
                  1e-12 * football::gaussian_curvature(m, t) / lambda);
    }
  }
  EXPECT_EQ(code_of([&] { (void)football::rescale(m, 0.0); }), ErrorCode::NonpositiveScale);
  EXPECT_EQ(code_of([&] { (void)football::rescale(m, -2.0); }), ErrorCode::NonpositiveScale);
}

TEST(ChartPoint, NormalizesAngle) {
  EXPECT_NEAR(ChartPoint::make(0.0, -0.5, Chart::tau).theta, 2.0 * std::numbers::pi - 0.5, 1e-15);
  EXPECT_NEAR(ChartPoint::make(0.0, 7.0, Chart::tau).theta, 7.0 - 2.0 * std::numbers::pi, 1e-15);
}

TEST(ChartTransform, SouthPoleMapsToOrigin) {
  const SolitonProfile p = solved(0.2, 0.8);
  const ChartContext ctx{p, std::nullopt};
  const ChartPoint u = football::chart_transform({1.0, 0.3, Chart::tau}, Chart::u_south, ctx);
  EXPECT_EQ(u.t, 0.0);
  EXPECT_EQ(u.theta, 0.3);
  EXPECT_EQ(football::chart_transform(u, Chart::r, ctx).t, 0.0);
  EXPECT_EQ(football::chart_transform({1.0, 0.0, Chart::tau}, Chart::r, ctx).t, 0.0);
}

TEST(ChartTransform, BasepointInBothUCharts) {
  const SolitonProfile p = solved(0.2, 0.8);
  const ChartContext ctx{p, 0.4};
  const ChartPoint base{0.2, 0.0, Chart::tau};
  EXPECT_NEAR(football::chart_transform(base, Chart::u_south, ctx).t, p.a() * 0.8, 1e-14);
  EXPECT_EQ(football::chart_transform(base, Chart::u_equatorial, ctx).t, 0.0);
  EXPECT_EQ(football::chart_transform(base, Chart::v, ctx).t, 0.0);
}

TEST(ChartTransform, RoundTripsOnGrid) {
  const SolitonProfile p = solved(0.2, 0.8);
  const ChartContext ctx{p, 0.4};
  for (int i = 1; i < 100; ++i) {
    const double tau = i / 100.0;
    const ChartPoint pt{tau, 1.0, Chart::tau};
    for (Chart c : {Chart::u_south, Chart::u_equatorial, Chart::v, Chart::r}) {
      const ChartPoint there = football::chart_transform(pt, c, ctx);
      EXPECT_NEAR(football::chart_transform(there, Chart::tau, ctx).t, tau, 1e-14) << football::to_string(c);
    }
  }
}

TEST(ChartTransform, SChartRoundTripAndNormalization) {
  const SolitonProfile p = solved(0.2, 0.8);
  const ChartContext ctx{p, std::nullopt};
  EXPECT_NEAR(football::chart_transform({0.2, 0.0, Chart::tau}, Chart::s, ctx).t, 0.0, 1e-15);
  for (double tau : {0.001, 0.05, 0.2, 0.5, 0.9, 0.999}) {
    const ChartPoint s = football::chart_transform({tau, 0.0, Chart::tau}, Chart::s, ctx);
    EXPECT_NEAR(football::chart_transform(s, Chart::tau, ctx).t, tau, 1e-12 * std::max(tau, 1e-3)) << tau;
  }
  // ds/dtau = 1/phi.
  const double h = 1e-5;
  const double s_plus = football::chart_transform({0.5 + h, 0.0, Chart::tau}, Chart::s, ctx).t;
  const double s_minus = football::chart_transform({0.5 - h, 0.0, Chart::tau}, Chart::s, ctx).t;
  EXPECT_NEAR((s_plus - s_minus) / (2 * h), 1.0 / football::phi(0.5, p), 1e-6);
}

TEST(ChartTransform, CompositionsAgreeWithDirectChains) {
  const SolitonProfile p = solved(0.1, 0.6);
  const ChartContext ctx{p, 0.3};
  const ChartPoint pt{0.35, 2.0, Chart::tau};
  const ChartPoint u = football::chart_transform(pt, Chart::u_south, ctx);
  const ChartPoint r_direct = football::chart_transform(u, Chart::r, ctx);
  const ChartPoint r_composed = football::chart_transform(pt, Chart::r, ctx);
  EXPECT_NEAR(r_direct.t, r_composed.t, 1e-13 * r_direct.t);
  EXPECT_NEAR(std::log1p(r_direct.t * r_direct.t), u.t, 1e-13 * u.t);
  const ChartPoint ue = football::chart_transform(pt, Chart::u_equatorial, ctx);
  EXPECT_NEAR(football::chart_transform(ue, Chart::v, ctx).t, ue.t / (2.0 * 0.3), 1e-15);
}

TEST(ChartTransform, DomainErrors) {
  const SolitonProfile p = solved(0.2, 0.8);
  EXPECT_EQ(code_of([&] { (void)football::chart_transform({-0.5, 0.0, Chart::u_south}, Chart::r, {p, {}}); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { (void)football::chart_transform({0.5, 0.0, Chart::tau}, Chart::v, {p, {}}); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([&] { (void)football::chart_transform({1.5, 0.0, Chart::tau}, Chart::u_south, {p, {}}); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { (void)football::chart_transform({0.5, 0.0, Chart::tau}, Chart::u_south, {}); }),
            ErrorCode::DomainError);
  const SolitonProfile round = solved(1.0, 1.0);
  EXPECT_EQ(code_of([&] { (void)football::chart_transform({0.5, 0.0, Chart::tau}, Chart::u_south, {round, {}}); }),
            ErrorCode::DomainError);
}
