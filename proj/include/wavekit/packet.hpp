#pragma once

// Minimal position-velocity uncertainty packets
//   Phi(p) = A exp(-alpha E(p) + beta p),  beta = beta_r + i beta_i,
// normalized so that (1/2pi) int |Phi|^2 dp = 1.

#include <algorithm>
#include <cmath>
#include <utility>

#include "wavekit/dispersion.hpp"
#include "wavekit/numerics.hpp"

namespace wavekit {

struct PacketParams {
  DispersionRelation rel = DispersionRelation::massless();
  double alpha = 1.0;
  double beta_r = 0.0;
  double beta_i = 0.0;
  // ln A; A itself can overflow for very narrow relativistic packets.
  double log_norm_A = 0.0;

  double norm_A() const { return std::exp(log_norm_A); }
  cplx beta() const { return {beta_r, beta_i}; }
};

/// Throws InvalidParams / LatticePeriodicity when the triple is not an
/// admissible minimal packet for the dispersion.
void validate_packet_params(const DispersionRelation& rel, double alpha,
                            double beta_r, double beta_i);

/// Closed-form ln A for the packet parameters.
double closed_form_log_norm(const DispersionRelation& rel, double alpha, double beta_r);

/// Builds the packet with the closed-form normalization (A real positive).
PacketParams make_minimal(const DispersionRelation& rel, double alpha, double beta_r,
                          double beta_i = 0.0);

/// Phi(p). Throws DomainError outside the lattice Brillouin zone.
cplx amplitude(const PacketParams& packet, double p);
/// ln(|Phi(p)|^2 / 2pi), no domain check.
double log_density(const PacketParams& packet, double p) noexcept;
/// |Phi(p)|^2 / 2pi.
double density(const PacketParams& packet, double p) noexcept;
/// d_p Phi / Phi = -alpha v(p) + beta.
cplx log_derivative(const PacketParams& packet, double p) noexcept;

/// Momentum interval carrying the packet: [center - half_width,
/// center + half_width], or the Brillouin zone when periodic.
struct MomentumWindow {
  double center = 0.0;
  double half_width = 0.0;
  bool periodic = false;
};

/// Window outside of which |Phi|^power has dropped far below the absolute
/// floor of the spec (relative to its peak).
MomentumWindow momentum_window(const PacketParams& packet, double power,
                               const QuadratureSpec& spec);

/// Integrates f(p) -> Values<N> over the packet's momentum support. Lattice
/// integrands use the equally spaced periodic rule when `periodic_rule` is
/// set (smooth periodic integrands), adaptive Gauss-Kronrod otherwise.
template <std::size_t N, class F>
VectorIntegral<N> integrate_momentum(const PacketParams& packet, F&& f, double power,
                                     const QuadratureSpec& spec,
                                     bool periodic_rule = true) {
  const MomentumWindow w = momentum_window(packet, power, spec);
  if (w.periodic) {
    if (periodic_rule) {
      return integrate_periodic_values<N>(std::forward<F>(f), 2.0 * w.half_width, spec,
                                          w.center);
    }
    return integrate_interval_values<N>(std::forward<F>(f), w.center - w.half_width,
                                        w.center + w.half_width, spec, 16);
  }
  return integrate_interval_values<N>(std::forward<F>(f), w.center - w.half_width,
                                      w.center + w.half_width, spec, 32);
}

/// (1/2pi) int |Phi|^2 dp with the stored normalization.
ComplexAmplitude norm_quadrature(const PacketParams& packet, const QuadratureSpec& spec = {});

/// Quadrature <v> of the packet.
ComplexAmplitude mean_velocity_quadrature(const PacketParams& packet,
                                          const QuadratureSpec& spec = {});

struct MomentTargets {
  double mean_velocity = 0.0;
  double mean_position = 0.0;
  // alpha itself (WidthMode::Alpha) or the target Delta x (WidthMode::PositionSpread).
  double width_parameter = 1.0;
};

enum class WidthMode { Alpha, PositionSpread };

/// Finds (alpha, beta_r, beta_i) reproducing the targets by bisection on
/// quadrature moments.
PacketParams solve_parameters(const DispersionRelation& rel, const MomentTargets& targets,
                              WidthMode mode = WidthMode::Alpha,
                              const QuadratureSpec& spec = {});

}  // namespace wavekit
