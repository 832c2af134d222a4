#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wavekit/bessel.hpp"
#include "wavekit/propagation.hpp"

using namespace wavekit;

namespace {

std::vector<PacketParams> grid_packets() {
  std::vector<PacketParams> out;
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (double f : {0.0, 0.25, 0.5}) {
      out.push_back(make_minimal(DispersionRelation::non_relativistic(3.0), alpha, f * alpha, 0.3));
      out.push_back(make_minimal(DispersionRelation::relativistic(1.0), alpha, f * alpha, 0.3));
      out.push_back(make_minimal(DispersionRelation::massless(), alpha, f * alpha, 0.3));
    }
    out.push_back(make_minimal(DispersionRelation::lattice(3.0, 1.0), alpha, 0.0, 1.0));
  }
  return out;
}

double rel_dev(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale <= 1e-12 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

TEST(Moments, NonRelativisticExample) {
  const auto p = make_minimal(DispersionRelation::non_relativistic(3.0), 1.0, 0.0);
  const auto m = moments_quadrature(p);
  EXPECT_NEAR(m[Moment::X2], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(m[Moment::V2], 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(uncertainty_bound(p), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(uncertainty_bound(make_minimal(p.rel, 0.4, 2.0)), 1.0 / 6.0, 1e-12);
}

TEST(Moments, MasslessExample) {
  const auto p = make_minimal(DispersionRelation::massless(), 1.0, 0.5);
  const auto q = moments_quadrature(p);
  EXPECT_NEAR(q[Moment::V], 0.5, 1e-12);
  EXPECT_NEAR(q[Moment::V2], 1.0, 1e-12);
  EXPECT_NEAR(q[Moment::X2], 0.75, 1e-12);
  const auto c = moments_closed_form(p);
  EXPECT_NEAR(c[Moment::E], 5.0 / 6.0, 1e-14);
  EXPECT_NEAR(uncertainty_bound(p), 0.75, 1e-10);
  EXPECT_NEAR(uncertainty_bound_closed(p), 0.75, 1e-14);
}

TEST(Moments, LatticeExample) {
  const auto p = make_minimal(DispersionRelation::lattice(3.0, 1.0), 1.0, 0.0);
  const auto c = moments_closed_form(p);
  // I1(2/3) / (6 I0(2/3)), mpmath value.
  EXPECT_NEAR(c[Moment::X2], 0.052681540211370197349, 1e-15);
  EXPECT_NEAR(moments_quadrature(p)[Moment::X2], 0.052681540211370197349, 1e-12);
  EXPECT_NEAR(uncertainty_bound(p), 0.052681540211370197349, 1e-12);
  EXPECT_FALSE(c.has(Moment::P2));
  EXPECT_THROW(c[Moment::P2], Error);
  EXPECT_EQ(c[Moment::P], 0.0);
}

TEST(Moments, RelativisticExample) {
  const auto p = make_minimal(DispersionRelation::relativistic(1.0), 1.0, 0.5);
  EXPECT_NEAR(moments_closed_form(p)[Moment::P], 1.124688493813698857, 1e-13);
  EXPECT_NEAR(moments_quadrature(p)[Moment::P], 1.124688493813698857, 1e-10);
}

TEST(Moments, CorrelationVanishes) {
  for (const auto& p : grid_packets()) {
    const auto m = moments_quadrature(p);
    EXPECT_NEAR(m[Moment::VX], 2.0 * m.mean_v() * m.mean_x(), 2e-8);
  }
}

TEST(MomentsProperty, ClosedFormMatchesQuadrature) {
  for (const auto& p : grid_packets()) {
    const auto c = moments_closed_form(p);
    const auto q = moments_quadrature(p);
    for (Moment m : kAllMoments) {
      if (!c.has(m)) continue;
      EXPECT_LE(rel_dev(c[m], q[m]), 1e-8)
          << to_string(p.rel.kind()) << " " << moment_name(m) << " alpha=" << p.alpha
          << " beta=" << p.beta_r;
    }
  }
}

TEST(MomentsProperty, SaturationAtTimeZero) {
  for (const auto& p : grid_packets()) {
    const auto q = moments_quadrature(p);
    const double product = std::sqrt(q.position_variance() * q.velocity_variance());
    EXPECT_NEAR(product - uncertainty_bound(p), 0.0, 1e-7);
    EXPECT_NEAR(uncertainty_bound_closed(p), uncertainty_bound(p), 1e-9);
  }
}

TEST(MomentsProperty, ProductGrowth) {
  for (const auto& p : grid_packets()) {
    const auto m0 = moments_closed_form(p);
    const double bound = uncertainty_bound(p);
    const double dv2 = m0.velocity_variance();
    for (double t : {1.0, 3.0}) {
      const double dx2 = position_moments(p, t).variance();
      EXPECT_NEAR(std::sqrt(dx2 * dv2), std::sqrt(bound * bound + dv2 * dv2 * t * t), 1e-7)
          << to_string(p.rel.kind()) << " t=" << t;
    }
  }
}

TEST(MomentsProperty, SpreadingFromEvolvedDensity) {
  for (const auto& p : grid_packets()) {
    const auto m0 = moments_closed_form(p);
    for (double t : {0.0, 1.0, 2.0, 5.0}) {
      const auto pm = position_moments(p, t);
      const double law = spreading_width_sq(m0, t);
      EXPECT_NEAR(pm.variance(), law, 1e-5 * law) << to_string(p.rel.kind()) << " t=" << t;
      EXPECT_NEAR(pm.mean / pm.norm, ehrenfest_position(m0, t), 1e-6);
    }
  }
}

TEST(MomentsProperty, RelativisticEnergyIdentity) {
  for (double m : {0.5, 1.0, 3.0}) {
    const auto p = make_minimal(DispersionRelation::relativistic(m), 1.2, 0.5);
    const auto c = moments_closed_form(p);
    EXPECT_NEAR(c[Moment::E2], c[Moment::P2] + m * m, 1e-10 * c[Moment::E2]);
  }
}

TEST(MomentsProperty, MasslessLimit) {
  const auto rel = moments_closed_form(make_minimal(DispersionRelation::relativistic(1e-6), 1.0, 0.5));
  const auto ml = moments_closed_form(make_minimal(DispersionRelation::massless(), 1.0, 0.5));
  for (Moment m : kAllMoments) {
    if (!rel.has(m) || !ml.has(m)) continue;
    EXPECT_LE(rel_dev(rel[m], ml[m]), 1e-4) << moment_name(m);
  }
}

TEST(Moments, EhrenfestAndSpreadingExamples) {
  MomentSet m;
  m.set(Moment::X, 0.0);
  m.set(Moment::V, 0.5);
  EXPECT_DOUBLE_EQ(ehrenfest_position(m, 4.0), 2.0);
  EXPECT_DOUBLE_EQ(ehrenfest_position(m, 0.0), 0.0);
  m.set(Moment::X, 1.5);
  m.set(Moment::V, 0.0);
  EXPECT_DOUBLE_EQ(ehrenfest_position(m, 7.0), 1.5);

  const auto nr = moments_closed_form(make_minimal(DispersionRelation::non_relativistic(3.0), 1.0, 0.0));
  EXPECT_NEAR(spreading_width_sq(nr, 0.0), 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(spreading_width_sq(nr, 2.0), 5.0 / 6.0, 1e-14);
  const auto ml = moments_closed_form(make_minimal(DispersionRelation::massless(), 1.0, 0.5));
  EXPECT_NEAR(spreading_width_sq(ml, 10.0), 75.75, 1e-12);
}

TEST(Moments, Names) {
  EXPECT_EQ(moment_name(Moment::X), "mean_x");
  EXPECT_EQ(moment_name(Moment::VX), "corr_vx");
}
