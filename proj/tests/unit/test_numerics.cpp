#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wavekit/numerics.hpp"

using namespace wavekit;

TEST(IntegrateLine, Gaussian) {
  const auto r = integrate_line([](double p) { return cplx(std::exp(-p * p)); }, 1.0);
  EXPECT_NEAR(r.value.real(), std::sqrt(std::numbers::pi), 1e-12);
  EXPECT_NEAR(r.value.imag(), 0.0, 1e-15);
  EXPECT_LE(r.abs_error, 1e-10);
}

TEST(IntegrateLine, TwoSidedExponential) {
  const auto r = integrate_line([](double p) { return cplx(std::exp(-2.0 * std::abs(p))); }, 2.0);
  EXPECT_NEAR(r.value.real(), 1.0, 1e-10);
}

TEST(IntegrateLine, OddIntegrandVanishes) {
  const auto r = integrate_line(
      [](double p) { return cplx(std::exp(-2.0 * std::sqrt(p * p + 1.0)) * p); }, 2.0);
  EXPECT_NEAR(std::abs(r.value), 0.0, 1e-14);
}

TEST(IntegrateLine, RejectsBadDecay) {
  auto f = [](double) { return cplx(1.0); };
  try {
    integrate_line(f, 0.0);
    FAIL() << "expected InvalidInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidInput);
  }
}

TEST(IntegrateLine, Linearity) {
  auto f = [](double p) { return cplx(std::exp(-p * p), p * std::exp(-p * p)); };
  auto g = [](double p) { return cplx(std::exp(-std::abs(p)) * std::cos(p)); };
  const cplx a(2.0, -1.0), b(0.5, 3.0);
  const auto rf = integrate_line(f, 1.0);
  const auto rg = integrate_line(g, 1.0);
  const auto rs = integrate_line([&](double p) { return a * f(p) + b * g(p); }, 1.0);
  const double bound = std::abs(a) * rf.abs_error + std::abs(b) * rg.abs_error + rs.abs_error;
  EXPECT_LE(std::abs(rs.value - (a * rf.value + b * rg.value)), bound + 1e-15);
}

TEST(IntegratePeriodic, Examples) {
  const double two_pi = 2.0 * std::numbers::pi;
  EXPECT_NEAR(integrate_periodic([](double) { return cplx(1.0); }, two_pi).value.real(), two_pi,
              1e-13);
  EXPECT_NEAR(std::abs(integrate_periodic([](double p) { return cplx(std::cos(p)); }, two_pi).value),
              0.0, 1e-14);
  // 2 pi I0(2), mpmath reference.
  const auto r = integrate_periodic([](double p) { return cplx(std::exp(2.0 * std::cos(p))); }, two_pi);
  EXPECT_NEAR(r.value.real(), 14.323056878100513324, 1e-12);
}

TEST(IntegratePeriodic, RejectsBadPeriod) {
  EXPECT_THROW(integrate_periodic([](double) { return cplx(1.0); }, -1.0), Error);
}

TEST(IntegrateInterval, Polynomial) {
  const auto r = integrate_interval([](double x) { return cplx(x * x * x, x); }, 0.0, 2.0);
  EXPECT_NEAR(r.value.real(), 4.0, 1e-13);
  EXPECT_NEAR(r.value.imag(), 2.0, 1e-13);
}

TEST(IntegrateHalfLine, Exponential) {
  const auto r = integrate_half_line([](double x) { return cplx(std::exp(-3.0 * (x - 1.0))); }, 1.0, 3.0);
  EXPECT_NEAR(r.value.real(), 1.0 / 3.0, 1e-12);
}

// Tightening the tolerance by 10 moves the value by less than the first error estimate.
TEST(QuadratureProperty, RefinementStaysWithinReportedError) {
  auto f = [](double p) { return std::exp(cplx(-std::sqrt(p * p + 1.0), 0.7 * p)); };
  QuadratureSpec spec;
  spec.relative_tolerance = 1e-6;
  const auto coarse = integrate_line(f, 1.0, spec);
  const auto fine = integrate_line(f, 1.0, spec.with_relative_tolerance(1e-7));
  EXPECT_LE(std::abs(fine.value - coarse.value), coarse.abs_error + 1e-15);

  auto g = [](double p) { return cplx(std::exp(std::cos(p)) * std::cos(3.0 * p)); };
  const auto pc = integrate_periodic(g, 2.0 * std::numbers::pi, spec);
  const auto pf = integrate_periodic(g, 2.0 * std::numbers::pi, spec.with_relative_tolerance(1e-7));
  EXPECT_LE(std::abs(pf.value - pc.value), pc.abs_error + 1e-15);
}

TEST(QuadratureProperty, ReportedErrorWithinSpec) {
  QuadratureSpec spec;
  for (double tol : {1e-4, 1e-8, 1e-12}) {
    spec.relative_tolerance = tol;
    const auto r = integrate_line([](double p) { return cplx(1.0 / std::cosh(p)); }, 1.0, spec);
    EXPECT_LE(r.abs_error, tol * std::abs(r.value) + spec.absolute_floor);
    EXPECT_NEAR(r.value.real(), std::numbers::pi, 10 * tol * std::numbers::pi + 1e-13);
  }
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec spec;
  EXPECT_NO_THROW(spec.validate());
  spec.relative_tolerance = 1.5;
  EXPECT_THROW(spec.validate(), Error);
  spec = {};
  spec.max_subdivisions = 4;
  EXPECT_THROW(spec.validate(), Error);
  spec = {};
  spec.absolute_floor = -1.0;
  EXPECT_THROW(spec.validate(), Error);
}

TEST(QuadratureSpec, BudgetExhaustionIsNonConvergence) {
  QuadratureSpec spec;
  spec.max_subdivisions = 64;
  spec.relative_tolerance = 1e-14;
  try {
    integrate_interval([](double x) { return cplx(std::sin(1000.0 * x) / std::sqrt(x)); }, 0.0, 10.0, spec);
    FAIL() << "expected NonConvergence";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
}
