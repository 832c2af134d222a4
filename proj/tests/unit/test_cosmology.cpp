#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "wavekit/app/figures.hpp"
#include "wavekit/cosmology.hpp"

using namespace wavekit;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidInput;
}

std::vector<ScaleFactorModel> models() {
  return {ScaleFactorModel::power_law(1.0, 1.0, 2.0 / 3.0), ScaleFactorModel::exponential(2.0, 0.3),
          ScaleFactorModel::tabulated({{0.0, 1.0}, {2.0, 1.5}, {5.0, 3.0}, {10.0, 4.0}})};
}

}  // namespace

TEST(ScaleFactor, Models) {
  const auto pl = ScaleFactorModel::power_law(2.0, 4.0, 0.5);
  EXPECT_DOUBLE_EQ(pl(0.0), 2.0);
  EXPECT_DOUBLE_EQ(pl(12.0), 4.0);
  const auto ex = ScaleFactorModel::exponential(1.5, 0.2);
  EXPECT_DOUBLE_EQ(ex(5.0), 1.5 * std::exp(1.0));
  const auto tab = ScaleFactorModel::tabulated({{0.0, 1.0}, {2.0, 4.0}});
  EXPECT_NEAR(tab(1.0), 2.0, 1e-15);
  EXPECT_TRUE(tab.expanding());
  EXPECT_FALSE(ScaleFactorModel::exponential(1.0, 0.0).expanding());
  EXPECT_EQ(code_of([&] { tab(3.0); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { ScaleFactorModel::tabulated({{1.0, 1.0}, {2.0, 2.0}}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { ScaleFactorModel::power_law(-1.0, 1.0, 0.5); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([] { ScaleFactorModel::tabulated({{0.0, 1.0}, {2.0, -2.0}}); }), ErrorCode::InvalidInput);
}

TEST(ClassicalVelocity, Examples) {
  for (double r : {0.5, 1.0, 7.0}) EXPECT_DOUBLE_EQ(classical_velocity(1.0, 1.0, r), 1.0);
  EXPECT_DOUBLE_EQ(classical_velocity(0.37, 2.0, 2.0), 0.37);
  EXPECT_NEAR(classical_velocity(0.6, 1.0, 2.0), 0.3 / std::sqrt(0.73), 1e-15);
}

TEST(ClassicalVelocity, ConservedMomentum) {
  auto gv = [](double v) { return v / std::sqrt(1.0 - v * v); };
  for (double v0 : {0.1, 0.5, 0.9, -0.7}) {
    for (double r : {1.3, 2.0, 10.0}) {
      EXPECT_NEAR(gv(classical_velocity(v0, 1.0, r)) * r, gv(v0), 1e-12);
    }
  }
}

TEST(MeanVelocity, Examples) {
  const auto ml = make_minimal(DispersionRelation::massless(), 1.0, 0.5);
  for (const auto& model : models()) {
    for (double t : {0.0, 1.0, 4.0}) {
      EXPECT_NEAR(mean_velocity(ml, model, t).value.real(), 0.5, 1e-10);
    }
  }
  const auto nr = make_minimal(DispersionRelation::non_relativistic(3.0), 1.0, 0.5);
  const auto doubling = ScaleFactorModel::tabulated({{0.0, 1.0}, {1.0, 2.0}});
  EXPECT_NEAR(mean_velocity(nr, doubling, 1.0).value.real(), 0.25, 1e-12);
  const auto rel = make_minimal(DispersionRelation::relativistic(1.0), 1.0, 0.3);
  const auto flat = ScaleFactorModel::exponential(1.0, 0.0);
  EXPECT_NEAR(mean_velocity(rel, flat, 3.0).value.real(), moments_closed_form(rel).mean_v(), 1e-10);
  EXPECT_EQ(code_of([&] { mean_velocity(make_minimal(DispersionRelation::lattice(1.0, 1.0), 1.0, 0.0), flat, 1.0); }),
            ErrorCode::KindMismatch);
}

TEST(CosmologyProperty, MonotoneRedShift) {
  for (const auto& model : models()) {
    for (const auto& p : {make_minimal(DispersionRelation::relativistic(1.0), 1.0, 0.5),
                          make_minimal(DispersionRelation::non_relativistic(2.0), 1.0, 0.5)}) {
      double prev = mean_velocity(p, model, 0.0).value.real();
      for (double t = 0.5; t <= 10.0; t += 0.5) {
        const double v = mean_velocity(p, model, t).value.real();
        EXPECT_LE(v, prev + 1e-14);
        prev = v;
      }
    }
  }
}

TEST(ComovingTrace, StaticReduction) {
  const auto flat = ScaleFactorModel::power_law(1.0, 1.0, 0.0);
  const auto ts = app::linspace(0.0, 5.0, 6);
  for (const auto& p : {make_minimal(DispersionRelation::relativistic(1.0), 1.0, 0.5, 0.3),
                        make_minimal(DispersionRelation::non_relativistic(3.0), 0.5, 0.25, -1.0),
                        make_minimal(DispersionRelation::massless(), 2.0, 1.0)}) {
    const auto m0 = moments_closed_form(p);
    const auto tr = comoving_trace(p, flat, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      EXPECT_NEAR(tr.mean_x[k], ehrenfest_position(m0, ts[k]), 1e-7);
      const double var = tr.mean_rho2[k] - tr.mean_rho[k] * tr.mean_rho[k];
      EXPECT_NEAR(var, spreading_width_sq(m0, ts[k]), 1e-6);
    }
  }
}

TEST(ComovingTrace, MasslessDrift) {
  const auto p = make_minimal(DispersionRelation::massless(), 1.0, 0.5, 0.4);
  const auto ts = app::linspace(0.0, 6.0, 7);
  for (const auto& model : models()) {
    const auto tr = comoving_trace(p, model, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double want = -0.4 / model.r0() + 0.5 * conformal_time(model, ts[k]).value.real();
      EXPECT_NEAR(tr.mean_rho[k], want, 1e-7);
      EXPECT_NEAR(tr.mean_v[k], 0.5, 1e-10);
    }
  }
}

TEST(ComovingTrace, NarrowPacketIsClassical) {
  const auto p = make_minimal(DispersionRelation::relativistic(1.0), 500.0, 250.0);
  const auto model = ScaleFactorModel::power_law(1.0, 1.0, 2.0 / 3.0);
  const double v0 = moments_closed_form(p).mean_v();
  const auto ts = app::linspace(0.0, 10.0, 6);
  const auto tr = comoving_trace(p, model, ts);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double classical = classical_velocity(v0, model.r0(), model(ts[k]));
    EXPECT_NEAR(tr.mean_v[k], classical, 0.01 * classical);
  }
}

TEST(ComovingTrace, NonRelativisticRedShift) {
  const auto p = make_minimal(DispersionRelation::non_relativistic(2.0), 1.0, 0.4);
  for (const auto& model : models()) {
    const auto ts = app::linspace(0.0, 8.0, 9);
    const auto tr = comoving_trace(p, model, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      EXPECT_NEAR(tr.mean_v[k] * model(ts[k]) / model.r0(), 0.4, 1e-6);
    }
  }
}

TEST(ComovingTrace, Validation) {
  const auto p = make_minimal(DispersionRelation::relativistic(1.0), 1.0, 0.0);
  const auto model = ScaleFactorModel::exponential(1.0, 0.1);
  EXPECT_EQ(code_of([&] { comoving_trace(p, model, {1.0, 2.0}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { comoving_trace(p, model, {0.0, 2.0, 1.0}); }), ErrorCode::InvalidInput);
  EXPECT_EQ(code_of([&] { comoving_trace(make_minimal(DispersionRelation::lattice(1.0, 1.0), 1.0, 0.0), model, {0.0}); }),
            ErrorCode::KindMismatch);
}
