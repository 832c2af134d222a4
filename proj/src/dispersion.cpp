#include "wavekit/dispersion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace wavekit {

std::string_view to_string(DispersionKind kind) noexcept {
  switch (kind) {
    case DispersionKind::NonRelativistic: return "nonrel";
    case DispersionKind::Lattice: return "lattice";
    case DispersionKind::Relativistic: return "rel";
    case DispersionKind::Massless: return "massless";
  }
  return "unknown";
}

namespace {

void require_mass(double mass) {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw Error(ErrorCode::InvalidParams, "mass must be positive and finite");
  }
}

}  // namespace

DispersionRelation DispersionRelation::non_relativistic(double mass) {
  require_mass(mass);
  return {DispersionKind::NonRelativistic, mass, 0.0};
}

DispersionRelation DispersionRelation::lattice(double mass, double spacing) {
  require_mass(mass);
  if (!(spacing > 0.0) || !std::isfinite(spacing)) {
    throw Error(ErrorCode::InvalidParams, "lattice spacing must be positive and finite");
  }
  return {DispersionKind::Lattice, mass, spacing};
}

DispersionRelation DispersionRelation::relativistic(double mass) {
  require_mass(mass);
  return {DispersionKind::Relativistic, mass, 0.0};
}

DispersionRelation DispersionRelation::massless() {
  return {DispersionKind::Massless, 0.0, 0.0};
}

double DispersionRelation::energy(double p) const noexcept {
  switch (kind_) {
    case DispersionKind::NonRelativistic: return p * p / (2.0 * mass_);
    case DispersionKind::Lattice:
      return -std::cos(p * spacing_) / (mass_ * spacing_ * spacing_);
    case DispersionKind::Relativistic: return std::hypot(p, mass_);
    case DispersionKind::Massless: return std::abs(p);
  }
  return 0.0;
}

double DispersionRelation::velocity(double p) const noexcept {
  switch (kind_) {
    case DispersionKind::NonRelativistic: return p / mass_;
    case DispersionKind::Lattice: return std::sin(p * spacing_) / (mass_ * spacing_);
    case DispersionKind::Relativistic: return p / std::hypot(p, mass_);
    case DispersionKind::Massless: return (p > 0.0) - (p < 0.0);
  }
  return 0.0;
}

double DispersionRelation::curvature(double p) const noexcept {
  switch (kind_) {
    case DispersionKind::NonRelativistic: return 1.0 / mass_;
    case DispersionKind::Lattice: return -spacing_ * spacing_ * energy(p);
    case DispersionKind::Relativistic: {
      const double e = std::hypot(p, mass_);
      return mass_ * mass_ / (e * e * e);
    }
    case DispersionKind::Massless: return 0.0;
  }
  return 0.0;
}

bool DispersionRelation::in_domain(double p) const noexcept {
  if (!std::isfinite(p)) return false;
  if (kind_ != DispersionKind::Lattice) return true;
  const double edge = std::numbers::pi / spacing_;
  return p > -edge && p <= edge;
}

DispersionPoint DispersionRelation::evaluate(double p) const {
  if (!in_domain(p)) {
    throw Error(ErrorCode::DomainError,
                "momentum " + std::to_string(p) + " outside the momentum domain");
  }
  if (kind_ == DispersionKind::Massless && p == 0.0) {
    throw Error(ErrorCode::CurvatureSingular,
                "massless curvature at p = 0 is the distribution 2 delta(p)");
  }
  return {energy(p), velocity(p), curvature(p)};
}

MomentumDomain DispersionRelation::momentum_domain() const noexcept {
  if (kind_ == DispersionKind::Lattice) {
    const double edge = std::numbers::pi / spacing_;
    return {true, -edge, edge};
  }
  const double inf = std::numeric_limits<double>::infinity();
  return {false, -inf, inf};
}

double DispersionRelation::max_speed() const noexcept {
  switch (kind_) {
    case DispersionKind::NonRelativistic: return std::numeric_limits<double>::infinity();
    case DispersionKind::Lattice: return 1.0 / (mass_ * spacing_);
    case DispersionKind::Relativistic:
    case DispersionKind::Massless: return 1.0;
  }
  return 0.0;
}

}  // namespace wavekit
