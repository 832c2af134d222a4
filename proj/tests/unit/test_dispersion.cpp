#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wavekit/dispersion.hpp"

using namespace wavekit;

namespace {

std::vector<DispersionRelation> all_kinds() {
  return {DispersionRelation::non_relativistic(2.0), DispersionRelation::lattice(3.0, 0.5),
          DispersionRelation::relativistic(1.5), DispersionRelation::massless()};
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

}  // namespace

TEST(Dispersion, Examples) {
  const auto rel = DispersionRelation::relativistic(1.0).evaluate(0.0);
  EXPECT_DOUBLE_EQ(rel.energy, 1.0);
  EXPECT_DOUBLE_EQ(rel.velocity, 0.0);
  EXPECT_DOUBLE_EQ(rel.curvature, 1.0);

  const auto nr = DispersionRelation::non_relativistic(2.0).evaluate(2.0);
  EXPECT_DOUBLE_EQ(nr.energy, 1.0);
  EXPECT_DOUBLE_EQ(nr.velocity, 1.0);
  EXPECT_DOUBLE_EQ(nr.curvature, 0.5);

  const auto lat = DispersionRelation::lattice(3.0, 1.0).evaluate(0.0);
  EXPECT_DOUBLE_EQ(lat.energy, -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(lat.velocity, 0.0);
  EXPECT_DOUBLE_EQ(lat.curvature, 1.0 / 3.0);
}

TEST(Dispersion, Domains) {
  EXPECT_FALSE(DispersionRelation::relativistic(1.0).momentum_domain().periodic);
  const auto d1 = DispersionRelation::lattice(3.0, 1.0).momentum_domain();
  EXPECT_TRUE(d1.periodic);
  EXPECT_DOUBLE_EQ(d1.lower, -std::numbers::pi);
  EXPECT_DOUBLE_EQ(d1.upper, std::numbers::pi);
  const auto d2 = DispersionRelation::lattice(3.0, 0.5).momentum_domain();
  EXPECT_DOUBLE_EQ(d2.lower, -2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(d2.upper, 2 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(d2.period(), 4 * std::numbers::pi);
}

TEST(Dispersion, Errors) {
  EXPECT_EQ(code_of([] { DispersionRelation::lattice(1.0, 1.0).evaluate(4.0); }),
            ErrorCode::DomainError);
  EXPECT_EQ(code_of([] { DispersionRelation::massless().evaluate(0.0); }),
            ErrorCode::CurvatureSingular);
  EXPECT_EQ(code_of([] { DispersionRelation::non_relativistic(0.0); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { DispersionRelation::relativistic(-1.0); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { DispersionRelation::lattice(1.0, 0.0); }), ErrorCode::InvalidParams);
  EXPECT_EQ(code_of([] { DispersionRelation::relativistic(NAN); }), ErrorCode::InvalidParams);
}

TEST(Dispersion, MaxSpeed) {
  EXPECT_TRUE(std::isinf(DispersionRelation::non_relativistic(1.0).max_speed()));
  EXPECT_DOUBLE_EQ(DispersionRelation::lattice(3.0, 0.5).max_speed(), 1.0 / 1.5);
  EXPECT_DOUBLE_EQ(DispersionRelation::relativistic(2.0).max_speed(), 1.0);
  EXPECT_DOUBLE_EQ(DispersionRelation::massless().max_speed(), 1.0);
}

TEST(DispersionProperty, FiniteDifferencesMatchDerivatives) {
  for (const auto& rel : all_kinds()) {
    const auto dom = rel.momentum_domain();
    for (int k = -9; k <= 9; ++k) {
      double p = 0.37 * k;
      if (dom.periodic) p = 0.95 * dom.upper * k / 9.0;
      if (rel.kind() == DispersionKind::Massless && k == 0) continue;
      const double h = 1e-5;
      const double dE = (rel.energy(p + h) - rel.energy(p - h)) / (2 * h);
      const double dv = (rel.velocity(p + h) - rel.velocity(p - h)) / (2 * h);
      const auto pt = rel.evaluate(p);
      EXPECT_NEAR(dE, pt.velocity, 1e-6 * std::max(1.0, std::abs(pt.velocity))) << p;
      EXPECT_NEAR(dv, pt.curvature, 1e-5 * std::max(1.0, std::abs(pt.curvature))) << p;
    }
  }
}

TEST(DispersionProperty, RelativisticBounds) {
  const auto rel = DispersionRelation::relativistic(0.7);
  for (double p = -1e4; p <= 1e4; p += 13.7) {
    EXPECT_GE(rel.energy(p), 0.7);
    EXPECT_LT(std::abs(rel.velocity(p)), 1.0);
  }
}

TEST(DispersionProperty, LatticeCurvatureIdentity) {
  const auto rel = DispersionRelation::lattice(3.0, 0.8);
  for (double p = -3.9; p <= 3.9; p += 0.1) {
    EXPECT_EQ(rel.curvature(p), -0.8 * 0.8 * rel.energy(p));
  }
}

TEST(DispersionProperty, MasslessLimit) {
  const auto massless = DispersionRelation::massless();
  for (double m : {1e-6, 1e-3, 0.5}) {
    const auto rel = DispersionRelation::relativistic(m);
    for (double p = -50.0; p <= 50.0; p += 0.73) {
      EXPECT_LE(std::abs(rel.energy(p) - massless.energy(p)), m * (1 + 1e-15));
    }
  }
}

TEST(Dispersion, KindNames) {
  EXPECT_EQ(to_string(DispersionKind::NonRelativistic), "nonrel");
  EXPECT_EQ(to_string(DispersionKind::Lattice), "lattice");
  EXPECT_EQ(to_string(DispersionKind::Relativistic), "rel");
  EXPECT_EQ(to_string(DispersionKind::Massless), "massless");
}
