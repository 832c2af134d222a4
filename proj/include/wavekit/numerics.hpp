#pragma once

// Adaptive quadrature on finite intervals, the real line and periodic
// intervals. Integrands may return a single complex value or a fixed-size
// array of complex values sharing one adaptive mesh.

#include <array>
#include <complex>
#include <cstddef>
#include <functional>

#include "wavekit/error.hpp"

namespace wavekit {

using cplx = std::complex<double>;

struct QuadratureSpec {
  double relative_tolerance = 1e-10;
  double absolute_floor = 1e-14;
  // Budget in integrand evaluations.
  std::size_t max_subdivisions = std::size_t{1} << 20;
  // Exponential-decay hint used when the caller does not pass one.
  double truncation_decay_rate = 1.0;

  /// Throws Error{InvalidInput} unless 0 < relative_tolerance < 1,
  /// absolute_floor >= 0, max_subdivisions >= 8 and the decay hint is > 0.
  void validate() const;

  QuadratureSpec with_relative_tolerance(double rel) const {
    QuadratureSpec s = *this;
    s.relative_tolerance = rel;
    return s;
  }
  QuadratureSpec with_absolute_floor(double floor) const {
    QuadratureSpec s = *this;
    s.absolute_floor = floor;
    return s;
  }
};

/// A complex value together with an absolute error estimate.
struct ComplexAmplitude {
  cplx value{};
  double abs_error = 0.0;
};

template <std::size_t N>
using Values = std::array<cplx, N>;

template <std::size_t N>
struct VectorIntegral {
  Values<N> value{};
  std::array<double, N> abs_error{};
  std::size_t evaluations = 0;
};

using ScalarIntegrand = std::function<cplx(double)>;

/// Half-width P of the window [-P, P] used for line integrals: the tail
/// beyond P is bounded by exp(-decay_rate * P) <= 1e-4 * absolute_floor.
double truncation_half_width(double decay_rate, const QuadratureSpec& spec);

/// Integral over the real line of an integrand bounded by C exp(-decay|p|).
ComplexAmplitude integrate_line(const ScalarIntegrand& f, double decay_rate,
                                const QuadratureSpec& spec = {});

/// Integral over one period [-period/2, period/2) of a smooth periodic
/// integrand. Uses the equally spaced rule with doubling refinement.
ComplexAmplitude integrate_periodic(const ScalarIntegrand& f, double period,
                                    const QuadratureSpec& spec = {});

ComplexAmplitude integrate_interval(const ScalarIntegrand& f, double a,
                                    double b, const QuadratureSpec& spec = {});

/// Integral over [a, inf) of an integrand decaying like exp(-decay (p - a)).
ComplexAmplitude integrate_half_line(const ScalarIntegrand& f, double a,
                                     double decay_rate,
                                     const QuadratureSpec& spec = {});

}  // namespace wavekit

#include "wavekit/detail/quadrature_impl.hpp"
