#pragma once

#include <string_view>

#include "wavekit/error.hpp"

namespace wavekit {

enum class DispersionKind { NonRelativistic, Lattice, Relativistic, Massless };

std::string_view to_string(DispersionKind kind) noexcept;

/// E(p) together with v = dE/dp and the curvature d^2E/dp^2.
struct DispersionPoint {
  double energy;
  double velocity;
  double curvature;
};

/// Full real line, or the periodic Brillouin zone (lower, upper].
struct MomentumDomain {
  bool periodic = false;
  double lower = 0.0;
  double upper = 0.0;

  double period() const { return upper - lower; }
};

/// Energy-momentum relation of a free particle (hbar = c = 1):
///   NonRelativistic  E = p^2 / 2m
///   Lattice          E = -cos(p a) / (m a^2)
///   Relativistic     E = sqrt(p^2 + m^2)
///   Massless         E = |p|
class DispersionRelation {
 public:
  static DispersionRelation non_relativistic(double mass);
  static DispersionRelation lattice(double mass, double spacing);
  static DispersionRelation relativistic(double mass);
  static DispersionRelation massless();

  DispersionKind kind() const noexcept { return kind_; }
  double mass() const noexcept { return mass_; }
  /// Lattice spacing a; zero for continuum kinds.
  double spacing() const noexcept { return spacing_; }

  /// Throws DomainError outside the Brillouin zone (lattice) and
  /// CurvatureSingular at p = 0 for the massless kind.
  DispersionPoint evaluate(double p) const;

  // Pointwise pieces without domain checks; velocity(0) = 0 for Massless.
  double energy(double p) const noexcept;
  double velocity(double p) const noexcept;
  /// d^2E/dp^2, with 0 at p = 0 for Massless (the delta weight is handled
  /// by callers that need it).
  double curvature(double p) const noexcept;

  MomentumDomain momentum_domain() const noexcept;
  /// Least upper bound of |v(p)|; infinity for NonRelativistic.
  double max_speed() const noexcept;
  bool in_domain(double p) const noexcept;

 private:
  DispersionRelation(DispersionKind kind, double mass, double spacing)
      : kind_(kind), mass_(mass), spacing_(spacing) {}

  DispersionKind kind_;
  double mass_;
  double spacing_;
};

}  // namespace wavekit
