#pragma once

// Bessel functions needed by the closed forms: J and Y of order 0 and 1 for
// real argument, integer-order I and orders 0, 1 of K for complex argument.
//
// I_n: power series for |z| <= 8, periodic integral representation beyond.
// K_0, K_1: power series for |z| <= 2, integral representation
//   K_nu(z) = int_0^inf exp(-z cosh u) cosh(nu u) du beyond (needs Re z > 0).
// J, Y: power series for x <= 8, integral representations on fixed
//   composite Gauss-Legendre rules beyond, so the result is smooth in x.

#include <utility>

#include "wavekit/numerics.hpp"

namespace wavekit {

inline constexpr double kBesselISeriesRadius = 8.0;
inline constexpr double kBesselKSeriesRadius = 2.0;
inline constexpr double kBesselJYSeriesLimit = 8.0;

/// (J0(x), Y0(x)) for x > 0. Y0 is the Neumann function N0.
std::pair<double, double> bessel_j0_y0(double x);
/// (J1(x), Y1(x)) for x > 0.
std::pair<double, double> bessel_j1_y1(double x);

/// I_n(z) for integer n (I_{-n} = I_n). Throws Overflow when |Re z| is too
/// large for the unscaled value to be representable.
ComplexAmplitude bessel_i_integer(int n, cplx z);
/// exp(-|Re z|) I_n(z); never overflows.
ComplexAmplitude bessel_i_integer_scaled(int n, cplx z);

struct BesselK01 {
  ComplexAmplitude k0;
  ComplexAmplitude k1;
};

/// K0(z), K1(z) for Re z > 0.
BesselK01 bessel_k01(cplx z);
/// exp(z) K0(z), exp(z) K1(z) for Re z > 0, or |z| <= kBesselKSeriesRadius
/// with z off the negative real axis.
BesselK01 bessel_k01_scaled(cplx z);

namespace bessel_detail {
// Regime-specific evaluators; exposed so the regimes can be cross-checked.
ComplexAmplitude i_series(int n, cplx z);
ComplexAmplitude i_integral_scaled(int n, cplx z);
BesselK01 k01_series(cplx z);
BesselK01 k01_integral_scaled(cplx z);
}  // namespace bessel_detail

}  // namespace wavekit
