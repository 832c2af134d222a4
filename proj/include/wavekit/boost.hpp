#pragma once

#include <functional>
#include <optional>
#include <utility>

#include "wavekit/moments.hpp"

namespace wavekit {

struct BoostParams {
  double u = 0.0;
  double gamma = 1.0;

  /// |u| < 1, gamma = 1/sqrt(1 - u^2). Throws InvalidBoost otherwise.
  static BoostParams lorentz(double u);
  /// Any finite u, gamma = 1.
  static BoostParams galilean(double u);
};

/// alpha' = alpha, beta_r' = beta_r - u alpha (non-relativistic packets only).
PacketParams galilean_boost(const PacketParams& packet, double u);

/// alpha' = gamma (alpha - u beta), beta' = gamma (beta - u alpha).
std::pair<double, double> lorentz_boost_params(double alpha, double beta_r, double u);

/// Psi_b(p') = A(-p') Psi(gamma (p' + u E(p'))), A(-p') = sqrt(gamma (1 + u v(p'))).
struct BoostedWave {
  std::function<cplx(double)> evaluator;
  // d Psi_b / dp'; present when the source is a minimal packet.
  std::function<cplx(double)> derivative;
  std::optional<PacketParams> source_packet;
  std::function<double(double)> residual_factor;
  DispersionRelation rel = DispersionRelation::relativistic(1.0);
  BoostParams boost;
  // Momentum interval carrying |Psi_b|.
  MomentumWindow window;
};

/// Boost of an arbitrary wave function of the relativistic dispersion `rel`.
/// `window` must cover the support of the boosted wave.
BoostedWave lorentz_boost_wavefunction(std::function<cplx(double)> psi,
                                       const DispersionRelation& rel, double u,
                                       const MomentumWindow& window);

/// Boost of a relativistic minimal packet (with analytic derivative).
BoostedWave lorentz_boost_packet(const PacketParams& packet, double u,
                                 const QuadratureSpec& spec = {});

/// Direct momentum-space quadrature in the boosted frame.
struct BoostedMoments {
  ComplexAmplitude norm;
  MomentSet moments;   // all fields; position fields need the derivative
  double mean_curvature = 0.0;  // <m^2 / E^3>_b
};

BoostedMoments boosted_moments_quadrature(const BoostedWave& wave,
                                          const QuadratureSpec& spec = {});

/// Predictions from the rest frame: <E>_b, <p>_b from the linear map on m0;
/// <v>_b, <x>_b, <x^2>_b by rest-frame quadrature of the boosted operators.
struct BoostedPrediction {
  double mean_E = 0.0;
  double mean_p = 0.0;
  double mean_v = 0.0;
  double mean_x = 0.0;
  double mean_x2 = 0.0;
};

BoostedPrediction boosted_expectations(const PacketParams& packet, const MomentSet& m0,
                                       double u, const QuadratureSpec& spec = {});

}  // namespace wavekit
