#pragma once

#include <utility>
#include <vector>

#include "wavekit/moments.hpp"

namespace wavekit {

enum class ScaleFactorKind { PowerLaw, Exponential, Tabulated };

/// Scale factor R(t) of a 1-D expanding universe:
///   PowerLaw     R0 (1 + t/t0)^n
///   Exponential  R0 exp(H t)
///   Tabulated    piecewise linear in ln R between (t, R) nodes
class ScaleFactorModel {
 public:
  static ScaleFactorModel power_law(double r0, double t0, double exponent);
  static ScaleFactorModel exponential(double r0, double rate);
  static ScaleFactorModel tabulated(std::vector<std::pair<double, double>> nodes);

  ScaleFactorKind kind() const noexcept { return kind_; }
  /// Throws InvalidInput where R is undefined or not positive.
  double operator()(double t) const;
  double r0() const { return (*this)(0.0); }
  bool expanding() const;

 private:
  ScaleFactorKind kind_ = ScaleFactorKind::PowerLaw;
  double r0_ = 1.0;
  double t0_ = 1.0;
  double exponent_ = 0.0;  // n or H
  std::vector<double> t_nodes_;
  std::vector<double> log_r_nodes_;
};

/// Red-shifted velocity of a classical particle with conserved p_rho:
/// (R0/R) v0 / sqrt(1 - v0^2 + v0^2 R0^2 / R^2).
double classical_velocity(double v0, double r0, double r);

/// <v(t)> = (1/2pi) int |Phi(p)|^2 v(p R(0)/R(t)) dp.
ComplexAmplitude mean_velocity(const PacketParams& packet, const ScaleFactorModel& model,
                               double t, const QuadratureSpec& spec = {});

struct ComovingTrace {
  std::vector<double> t_values;
  std::vector<double> mean_rho;
  std::vector<double> mean_rho2;
  std::vector<double> mean_x;
  std::vector<double> mean_v;
};

/// Comoving moments: with D(t, p) = int_0^t v(p R0/R(t'))/R(t') dt',
///   <rho>(t)   = <x>/R0 + <D>
///   <rho^2>(t) = <x^2>/R0^2 + <(x D + D x)>/R0 + <D^2>.
/// t_values must be ascending and start at 0.
ComovingTrace comoving_trace(const PacketParams& packet, const ScaleFactorModel& model,
                             const std::vector<double>& t_values,
                             const QuadratureSpec& spec = {});

/// int_0^t dt'/R(t') (adaptive, for reference values).
ComplexAmplitude conformal_time(const ScaleFactorModel& model, double t,
                                const QuadratureSpec& spec = {});

}  // namespace wavekit
