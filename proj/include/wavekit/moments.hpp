#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "wavekit/packet.hpp"

namespace wavekit {

enum class Moment { X, X2, V, V2, P, P2, E, E2, VX };
inline constexpr std::size_t kMomentCount = 9;
inline constexpr std::array<Moment, kMomentCount> kAllMoments = {
    Moment::X, Moment::X2, Moment::V, Moment::V2, Moment::P,
    Moment::P2, Moment::E, Moment::E2, Moment::VX};

/// "mean_x", "mean_x2", ..., "corr_vx".
std::string_view moment_name(Moment m) noexcept;

enum class Provenance { ClosedForm, Quadrature };
std::string_view to_string(Provenance p) noexcept;

/// <x>, <x^2>, <v>, <v^2>, <p>, <p^2>, <E>, <E^2>, <vx + xv>. Fields without
/// a value for the provenance are empty.
struct MomentSet {
  Provenance provenance = Provenance::Quadrature;
  std::array<std::optional<double>, kMomentCount> value{};
  std::array<double, kMomentCount> abs_error{};

  bool has(Moment m) const { return value[index(m)].has_value(); }
  /// Throws InvalidInput when the field is absent.
  double operator[](Moment m) const;
  void set(Moment m, double v, double err = 0.0) {
    value[index(m)] = v;
    abs_error[index(m)] = err;
  }
  double error(Moment m) const { return abs_error[index(m)]; }

  double mean_x() const { return (*this)[Moment::X]; }
  double mean_v() const { return (*this)[Moment::V]; }
  double position_variance() const;
  double velocity_variance() const;

  static constexpr std::size_t index(Moment m) { return static_cast<std::size_t>(m); }
};

MomentSet moments_quadrature(const PacketParams& packet, const QuadratureSpec& spec = {});
MomentSet moments_closed_form(const PacketParams& packet, const QuadratureSpec& spec = {});

/// The relativistic integral int_alpha^inf K0(2m sqrt(a'^2 - beta^2)) da'.
ComplexAmplitude relativistic_k0_tail(double mass, double alpha, double beta_r,
                                      const QuadratureSpec& spec = {});

/// <d_p^2 E> by quadrature; for massless packets the delta weight 2 |Phi(0)|^2/2pi.
ComplexAmplitude mean_curvature(const PacketParams& packet, const QuadratureSpec& spec = {});

/// (1/2)|<d_p^2 E>|.
double uncertainty_bound(const PacketParams& packet, const QuadratureSpec& spec = {});

/// Closed-form bound: 1/2m, (a^2/2)|<E>|, (m^2/2)<E^-3> (quadrature for the
/// last), (alpha^2 - beta^2)/alpha.
double uncertainty_bound_closed(const PacketParams& packet, const QuadratureSpec& spec = {});

/// Delta x * Delta v - bound, from quadrature moments.
double saturation_residual(const PacketParams& packet, const QuadratureSpec& spec = {});

double ehrenfest_position(const MomentSet& m0, double t);
/// Delta x(0)^2 + (corr_vx - 2<v><x>) t + Delta v^2 t^2.
double spreading_width_sq(const MomentSet& m0, double t);

}  // namespace wavekit
