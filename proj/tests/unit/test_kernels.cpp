#include <gtest/gtest.h>

#include <quadmath.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hexfourier/error.hpp"
#include "hexfourier/kernels.hpp"
#include "hexfourier/specfun.hpp"

namespace hexfourier {
namespace {

constexpr double kPi = std::numbers::pi;
using quad = __float128;

// Three-term closed forms in 113-bit arithmetic. Cancellation near the
// singular set costs at most ~20 of the 34 digits at the gaps tested here.
struct QuadPoint {
  quad t1, t2, t3;
};

QuadPoint to_quad(const HexPoint& t) {
  return {static_cast<quad>(t.t1()), static_cast<quad>(t.t2()),
          -static_cast<quad>(t.t1()) - static_cast<quad>(t.t2())};
}

double dirichlet_q(double rho, const HexPoint& t) {
  const QuadPoint p = to_quad(t);
  const quad a = p.t1 - p.t2, b = p.t2 - p.t3, c = p.t3 - p.t1;
  const quad k = 2 * static_cast<quad>(rho) / 3;
  const quad s = cosq(k * a) / (b * c) + cosq(k * b) / (c * a) + cosq(k * c) / (a * b);
  return static_cast<double>(-quad(4.5) * s);
}

double e_kernel_q(double rho, const HexPoint& t) {
  const QuadPoint p = to_quad(t);
  const quad a = p.t1 - p.t2, b = p.t2 - p.t3, c = p.t3 - p.t1;
  const quad k = 2 * static_cast<quad>(rho) / 3;
  return static_cast<double>(3 * (a * sinq(k * a) / (b * c) + b * sinq(k * b) / (c * a) + c * sinq(k * c) / (a * b)));
}

double cesaro2_q(double R, const HexPoint& t) {
  const QuadPoint p = to_quad(t);
  const quad a = p.t1 - p.t2, b = p.t2 - p.t3, c = p.t3 - p.t1;
  const quad k = 2 * static_cast<quad>(R) / 3;
  auto F = [](quad z) {
    if (z == 0) return static_cast<quad>(1);
    const quad s = sinq(z / 2) / (z / 2);
    return s * s;
  };
  return static_cast<double>(-quad(4.5) * (F(k * a) / (b * c) + F(k * b) / (c * a) + F(k * c) / (a * b)));
}

TEST(Dirichlet, OriginAndScaling) {
  for (double rho : {0.5, 1.0, 2.0}) {
    const auto v = dirichlet(rho, HexPoint());
    EXPECT_DOUBLE_EQ(v.value, 3 * rho * rho);
    EXPECT_EQ(v.method, Method::kLimitFormula);
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-4, 4);
  for (int i = 0; i < 100; ++i) {
    const HexPoint t(u(rng), u(rng));
    const double v = dirichlet(2.0, t).value;
    EXPECT_NEAR(v, 4.0 * dirichlet(1.0, 2.0 * t).value, 1e-10 * (1 + std::abs(v)));
  }
  EXPECT_THROW(dirichlet(0.0, HexPoint(1, 0)), std::invalid_argument);
  EXPECT_THROW(dirichlet(-1.0, HexPoint(1, 0)), std::invalid_argument);
}

TEST(Dirichlet, ClosedFormMatchesQuadPrecision) {
  const HexPoint t(1, 0);
  const auto v = dirichlet(1.0, t);
  EXPECT_EQ(v.method, Method::kClosedForm);
  EXPECT_NEAR(v.value, dirichlet_q(1.0, t), 1e-14);
}

TEST(Kernels, SingularFallbackAgainstQuadPrecision) {
  for (double eps : {1e-3, 1e-5, 1e-7}) {
    for (const HexPoint t : {HexPoint(0.8, 0.8 + eps), HexPoint(-1.3 + eps, 2.6), HexPoint(eps, -eps / 3)}) {
      const auto d = dirichlet(1.7, t);
      const auto e = e_kernel(1.7, t);
      const auto c = cesaro_kernel(2.3, 2.0, t);
      const double tol_d = std::max(d.error_estimate, 1e-13);
      EXPECT_NEAR(d.value, dirichlet_q(1.7, t), tol_d) << "eps=" << eps;
      EXPECT_NEAR(e.value, e_kernel_q(1.7, t), std::max(e.error_estimate, 1e-13)) << "eps=" << eps;
      EXPECT_NEAR(c.value, cesaro2_q(2.3, t), std::max(c.error_estimate, 1e-13)) << "eps=" << eps;
      if (eps < 1e-4) {
        EXPECT_EQ(d.method, Method::kTaylorFallback);
        EXPECT_EQ(c.method, Method::kTaylorFallback);
      }
    }
  }
}

TEST(Kernels, ExactlyOnSingularLines) {
  // t1 = t2: the closed form is 0/0; compare with a point a hair away.
  const HexPoint on(0.7, 0.7);
  const HexPoint off(0.7, 0.7 + 1e-9);
  EXPECT_NEAR(dirichlet(2.0, on).value, dirichlet_q(2.0, off), 1e-8);
  EXPECT_NEAR(e_kernel(2.0, on).value, e_kernel_q(2.0, off), 1e-8);
  EXPECT_NEAR(cesaro_kernel(2.0, 2.0, on).value, cesaro2_q(2.0, off), 1e-8);
  EXPECT_TRUE(std::isfinite(cesaro_kernel(2.0, 1.5, on).value));
}

TEST(Kernels, PermutationAndEvenness) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const HexPoint t(u(rng), u(rng));
    const HexPoint perm = HexPoint::from_components(t.t2(), t.t1(), t.t3());
    const HexPoint cyc = HexPoint::from_components(t.t3(), t.t1(), t.t2());
    const double d = dirichlet(1.3, t).value;
    const double scale = 1e-11 * (1 + std::abs(d));
    EXPECT_NEAR(dirichlet(1.3, perm).value, d, scale);
    EXPECT_NEAR(dirichlet(1.3, cyc).value, d, scale);
    EXPECT_NEAR(dirichlet(1.3, -t).value, d, scale);
    const double e = e_kernel(1.3, t).value;
    EXPECT_NEAR(e_kernel(1.3, perm).value, e, 1e-11 * (1 + std::abs(e)));
    EXPECT_NEAR(e_kernel(1.3, -t).value, e, 1e-11 * (1 + std::abs(e)));
    const double c = cesaro_kernel(2.0, 2.5, t).value;
    EXPECT_NEAR(cesaro_kernel(2.0, 2.5, cyc).value, c, 1e-11 * (1 + std::abs(c)));
    EXPECT_NEAR(g_direct(perm), g_direct(t), 1e-9 * (1 + std::abs(g_direct(t))));
    EXPECT_NEAR(j_closed(perm), j_closed(t), 1e-12 * (1 + j_closed(t)));
    EXPECT_NEAR(m_spline(0.7, perm), m_spline(0.7, t), 1e-12);
  }
}

TEST(Cesaro, OriginAndIntegerOrders) {
  for (double d : {0.5, 1.0, 2.0, 3.5}) {
    EXPECT_DOUBLE_EQ(cesaro_kernel(2.0, d, HexPoint()).value, 24.0 / ((d + 1) * (d + 2)));
  }
  EXPECT_THROW(cesaro_kernel(1.0, 0.0, HexPoint(1, 0)), std::invalid_argument);
  EXPECT_THROW(cesaro_kernel(0.0, 2.0, HexPoint(1, 0)), std::invalid_argument);
}

TEST(Cesaro, WitnessIsNegativeBelowOrderTwo) {
  for (double d : {1.2, 1.5, 1.8}) {
    for (double R : {1.0, 5.0}) {
      const HexPoint w(3 * kPi / R, -3 * kPi / R);
      const double v = cesaro_kernel(R, d, w).value;
      EXPECT_LT(v, 0.0);
      const double want = R * R / (2 * kPi * kPi) * f_delta_gap(d, 2 * kPi, 4 * kPi);
      EXPECT_NEAR(v, want, 1e-8 * std::abs(want));
    }
  }
  EXPECT_GE(cesaro_kernel(1.0, 2.0, HexPoint(3 * kPi, -3 * kPi)).value, 0.0);
}

TEST(SumOfSquares, Examples) {
  EXPECT_EQ(g_direct(HexPoint()), 0.0);
  EXPECT_EQ(g_sos(HexPoint()), 0.0);
  const HexPoint t(1.1, -2.3);
  EXPECT_NEAR(g_direct(t), g_sos(t), 1e-12 * (1 + std::abs(g_direct(t))));
}

TEST(BSpline, Basics) {
  EXPECT_EQ(bspline1(0.5, 0, 1), 1.0);
  EXPECT_EQ(bspline1(0.5, 1, 0), 1.0);
  EXPECT_EQ(bspline1(2, 0, 1), 0.0);
  EXPECT_EQ(bspline1(0, 0, 1), 0.0);
  EXPECT_EQ(bspline1(1, 0, 1), 0.0);
  EXPECT_EQ(bspline1(0.1, 0, 0.5), 2.0);
  EXPECT_THROW(bspline1(0.5, 1, 1), std::invalid_argument);
}

TEST(BSpline, DegenerateKnotsReportPair) {
  try {
    m1_spline(0.3, HexPoint(0.5, 0.5));  // t1 - t3 == t2 - t3
    FAIL() << "expected DegenerateKnotsError";
  } catch (const DegenerateKnotsError& e) {
    EXPECT_EQ(e.pair(), 0);
  }
}

TEST(BSpline, PiecesCoverSupportAndIntegrateToThree) {
  const HexPoint t(0.3, 1.1);
  const auto pieces = m_spline_pieces(t);
  ASSERT_FALSE(pieces.empty());
  for (std::size_t i = 1; i < pieces.size(); ++i) EXPECT_EQ(pieces[i].lo, pieces[i - 1].hi);
  EXPECT_NEAR(m_spline_integral(t), 3.0, 1e-14);
  for (const auto& p : pieces) EXPECT_EQ(p.value, m_spline(0.5 * (p.lo + p.hi), t));
}

TEST(BSpline, OmegaFormulaAtUnitArgument) {
  // t2 - t3 = 1.8, t2 - t1 = 1.5, t1 - t3 = 0.3.
  const double t3 = -(0.3 + 1.8) / 3.0;
  const HexPoint t(t3 + 0.3, t3 + 1.8);
  EXPECT_NEAR(m1_spline(1.0, t), 3 * t.t2() / ((t.t2() - t.t1()) * (t.t2() - t.t3())), 1e-14);
}

TEST(EKernel, SplineRoute) {
  const HexPoint t(1.3, -0.4);
  for (double rho : {0.3, 1.0, 4.0}) {
    EXPECT_NEAR(e_kernel_via_spline(rho, t), e_kernel(rho, t).value, 1e-12);
  }
}

TEST(Spider, RegionExamples) {
  EXPECT_EQ(j_closed(HexPoint(0.2, -0.1)), 0.0);
  EXPECT_NEAR(j_closed(HexPoint(0.6, 0.0)), 25 * kPi / 6, 1e-13);
  const HexPoint legs((2 * 0.4 + 1.5) / 3.0, (1.5 - 0.4) / 3.0);  // differences (0.4, 1.5, -1.9)
  EXPECT_NEAR(j_closed(legs), 1.5 * kPi / (1.5 * 1.9), 1e-13);
  EXPECT_EQ(j_closed(HexPoint(3, 0)), 0.0);
  EXPECT_THROW(j_closed(HexPoint(0.5, -0.5)), BoundaryBandError);
}

TEST(MethodNames, Strings) {
  EXPECT_EQ(to_string(Method::kClosedForm), "closed-form");
  EXPECT_EQ(to_string(Method::kTaylorFallback), "taylor-fallback");
  EXPECT_EQ(to_string(Method::kLimitFormula), "limit-formula");
}

}  // namespace
}  // namespace hexfourier
