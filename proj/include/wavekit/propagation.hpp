#pragma once

#include <utility>
#include <vector>

#include "wavekit/moments.hpp"

namespace wavekit {

/// Free Green's function G(x, t) = (1/2pi) int exp(-i E(p) t + i p x) dp
/// in closed form, continued to complex arguments:
///   NonRelativistic  sqrt(m / (2 pi i t)) exp(i m x^2 / 2t)
///   Lattice          I_{x/a}(i t / m a^2) / a        (x an integer site)
///   Relativistic     (i m t / pi z) K1(m z),  z = sqrt(x^2 - t^2)
///   Massless         (i / pi) t / (x^2 - t^2)
/// Square roots use the principal branch. Real points inside the light cone
/// use the Hankel form -(m t / 2r)(J1(m r) - i Y1(m r)), r = sqrt(t^2 - x^2).
ComplexAmplitude greens_closed(const DispersionRelation& rel, cplx x, cplx t);

/// Relativistic G at real (x, t) from the K1 form, approaching the real axis
/// from Im t < 0. Valid on both sides of the light cone when m|x^2 - t^2|^(1/2)
/// is inside the K series radius.
cplx relativistic_greens_k_form(double mass, double x, double t);
/// Relativistic G at real (x, t) with |x| < t from the J1/Y1 form.
cplx relativistic_greens_jy_form(double mass, double x, double t);

/// Phi(x, t) = A G(x - i beta, t - i alpha).
ComplexAmplitude evolve_closed(const PacketParams& packet, double x, double t);
/// Phi(x, t) = (1/2pi) int Phi(p) exp(-i E(p) t + i p x) dp by quadrature.
ComplexAmplitude evolve_quadrature(const PacketParams& packet, double x, double t,
                                   const QuadratureSpec& spec = {});

enum class EvolutionMethod { Closed, Quadrature };

/// Phi(x, t) by either method; closed-form light-cone singularities fall
/// back to quadrature. `fallback` (optional) reports whether that happened.
ComplexAmplitude evolve(const PacketParams& packet, double x, double t,
                        EvolutionMethod method, const QuadratureSpec& spec = {},
                        bool* fallback = nullptr);

struct DensityGrid {
  std::vector<double> x_values;
  std::vector<double> t_values;
  // density[i][j] = |Phi(x_j, t_i)|^2
  std::vector<std::vector<double>> density;
  std::vector<std::vector<double>> abs_error;
  EvolutionMethod method = EvolutionMethod::Closed;
  // (i, j) of points that fell back to quadrature.
  std::vector<std::pair<std::size_t, std::size_t>> fallback_points;
};

/// Lattice grids must consist of sites (x + beta_i)/a integer.
DensityGrid density_grid(const PacketParams& packet, const std::vector<double>& x_values,
                         const std::vector<double>& t_values, EvolutionMethod method,
                         const QuadratureSpec& spec = {});

/// Trapezoid sum of one grid row (lattice rows: a times the site sum).
double grid_row_probability(const DensityGrid& grid, std::size_t row, double spacing = 0.0);

/// Norm, mean and second moment of |Phi(x, t)|^2 over x. Continuum kinds
/// integrate on the whole line with x = c + s tan(theta); lattice kinds sum
/// over sites until the terms are negligible. In quadrature mode points more
/// than 50 widths from the centre use the closed form.
struct PositionMoments {
  double norm = 0.0;
  double mean = 0.0;
  double mean_sq = 0.0;
  std::array<double, 3> abs_error{};

  double variance() const { return mean_sq / norm - (mean / norm) * (mean / norm); }
};

PositionMoments position_moments(const PacketParams& packet, double t,
                                 EvolutionMethod method = EvolutionMethod::Closed,
                                 const QuadratureSpec& spec = {});

/// Probability in [lo, hi] at time t.
ComplexAmplitude probability_in(const PacketParams& packet, double t, double lo, double hi,
                                EvolutionMethod method = EvolutionMethod::Closed,
                                const QuadratureSpec& spec = {});

}  // namespace wavekit
