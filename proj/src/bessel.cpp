#include "wavekit/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wavekit/detail/gauss_legendre.hpp"

namespace wavekit {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kPi = std::numbers::pi;
// exp(-kLogCut) is below every tolerance we care about.
constexpr double kLogCut = 46.0;
constexpr double kMaxExponent = 700.0;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidInput, std::string(name) + " requires x > 0");
  }
}

// Series for J0, Y0, J1, Y1 at x <= 8. Returns {J0, Y0, J1, Y1}.
std::array<double, 4> jy_series(double x) {
  const double q = 0.25 * x * x;
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double j0 = 0.0, y0_sum = 0.0, j1 = 0.0, y1_sum = 0.0;
  double t0 = 1.0;  // (-q)^k / (k!)^2
  double t1 = 1.0;  // (-q)^k / (k! (k+1)!)
  double harmonic = 0.0;  // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      t0 *= -q / (static_cast<double>(k) * k);
      t1 *= -q / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    j0 += t0;
    j1 += t1;
    y0_sum -= harmonic * t0;
    y1_sum += (harmonic + harmonic_next - 2.0 * kEulerGamma) * t1;
    if (k > 2 && std::abs(t0) < kEps * 1e-3 && std::abs(t1) < kEps * 1e-3) break;
  }
  j1 *= 0.5 * x;
  const double y0 = (2.0 / kPi) * (log_term * j0 + y0_sum);
  const double y1 = -2.0 / (kPi * x) + (2.0 / kPi) * std::log(0.5 * x) * j1 -
                    (0.5 * x / kPi) * y1_sum;
  return {j0, y0, j1, y1};
}

// Integral representations for x > 8:
//   J_n(x) = (1/pi) int_0^pi cos(n th - x sin th) dth
//   Y_n(x) = (1/pi) int_0^pi sin(x sin th - n th) dth
//            - (1/pi) int_0^inf (e^{n t} + (-1)^n e^{-n t}) e^{-x sinh t} dt
std::pair<double, double> jy_integral(int n, double x) {
  const int panels = static_cast<int>(std::ceil(0.5 * x)) + 4;
  const cplx oscillatory = detail::composite_gauss_legendre<20>(
      [&](double th) {
        const double phase = n * th - x * std::sin(th);
        return cplx(std::cos(phase), -std::sin(phase));
      },
      0.0, kPi, panels);
  double t_max = std::asinh(kLogCut / x);
  for (int i = 0; i < 4; ++i) t_max = std::asinh((kLogCut + n * t_max) / x);
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double decaying = detail::composite_gauss_legendre<20>(
      [&](double t) {
        return (std::exp(n * t) + sign * std::exp(-n * t)) * std::exp(-x * std::sinh(t));
      },
      0.0, t_max, 16);
  return {oscillatory.real() / kPi, (oscillatory.imag() - decaying) / kPi};
}

}  // namespace

std::pair<double, double> bessel_j0_y0(double x) {
  require_positive(x, "bessel_j0_y0");
  if (x <= kBesselJYSeriesLimit) {
    const auto s = jy_series(x);
    return {s[0], s[1]};
  }
  return jy_integral(0, x);
}

std::pair<double, double> bessel_j1_y1(double x) {
  require_positive(x, "bessel_j1_y1");
  if (x <= kBesselJYSeriesLimit) {
    const auto s = jy_series(x);
    return {s[2], s[3]};
  }
  return jy_integral(1, x);
}

namespace bessel_detail {

ComplexAmplitude i_series(int n, cplx z) {
  n = std::abs(n);
  cplx term = 1.0;
  for (int k = 1; k <= n; ++k) term *= 0.5 * z / static_cast<double>(k);
  const cplx q = 0.25 * z * z;
  cplx sum = term;
  double magnitude = std::abs(term);
  for (int k = 1; k < 500; ++k) {
    term *= q / (static_cast<double>(k) * (n + k));
    sum += term;
    magnitude += std::abs(term);
    if (std::abs(term) <= kEps * 1e-2 * std::abs(sum)) break;
  }
  return {sum, 8.0 * kEps * magnitude};
}

ComplexAmplitude i_integral_scaled(int n, cplx z) {
  n = std::abs(n);
  const double shift = std::abs(z.real());
  // I_n(z) = (1/2pi) int_{-pi}^{pi} exp(z cos th) cos(n th) dth; the
  // integrand is even, so sum over [0, pi] with trapezoid end weights.
  auto trapezoid = [&](std::size_t points, double& magnitude) {
    cplx sum = 0.0;
    magnitude = 0.0;
    const std::size_t half = points / 2;
    for (std::size_t k = 0; k <= half; ++k) {
      const double th = 2.0 * kPi * static_cast<double>(k) / points;
      const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
      const cplx value = std::exp(z * std::cos(th) - shift) * std::cos(n * th);
      sum += weight * value;
      magnitude += weight * std::abs(value);
    }
    magnitude /= points;
    return sum / static_cast<double>(points);
  };
  std::size_t points = 32;
  while (points < 2.0 * std::abs(z) + n + 48) points *= 2;
  double magnitude = 0.0;
  const cplx coarse = trapezoid(points, magnitude);
  const cplx fine = trapezoid(2 * points, magnitude);
  return {fine, std::abs(fine - coarse) + 8.0 * kEps * magnitude};
}

BesselK01 k01_series(cplx z) {
  if (z == cplx(0.0) || (z.imag() == 0.0 && z.real() < 0.0)) {
    throw Error(ErrorCode::InvalidInput, "K series requires z off (-inf, 0]");
  }
  const cplx q = 0.25 * z * z;
  const cplx log_half = std::log(0.5 * z);
  cplx t0 = 1.0;  // q^k / (k!)^2
  cplx t1 = 1.0;  // q^k / (k! (k+1)!)
  cplx i0 = 0.0, i1 = 0.0, s0 = 0.0, s1 = 0.0;
  double harmonic = 0.0;
  double magnitude = 0.0;
  for (int k = 0; k < 300; ++k) {
    if (k > 0) {
      t0 *= q / (static_cast<double>(k) * k);
      t1 *= q / (static_cast<double>(k) * (k + 1));
      harmonic += 1.0 / k;
    }
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    i0 += t0;
    i1 += t1;
    s0 += harmonic * t0;
    s1 += (harmonic + harmonic_next - 2.0 * kEulerGamma) * t1;
    magnitude += std::abs(t0) * (1.0 + harmonic) + std::abs(t1) * (1.0 + harmonic_next);
    if (k > 2 && std::abs(t0) < kEps * 1e-3 * std::abs(i0) &&
        std::abs(t1) < kEps * 1e-3 * std::abs(i1)) {
      break;
    }
  }
  i1 *= 0.5 * z;
  const cplx k0 = -(log_half + kEulerGamma) * i0 + s0;
  const cplx k1 = 1.0 / z + log_half * i1 - 0.25 * z * s1;
  const double scale = magnitude * (1.0 + std::abs(log_half));
  return {{k0, 8.0 * kEps * scale}, {k1, 8.0 * kEps * (scale * std::abs(z) + 1.0 / std::abs(z))}};
}

BesselK01 k01_integral_scaled(cplx z) {
  const double re = z.real();
  if (!(re > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "K integral representation requires Re z > 0");
  }
  // Truncate where exp(-Re z (cosh u - 1)) cosh u < exp(-kLogCut).
  double u_max = std::acosh(1.0 + kLogCut / re);
  for (int i = 0; i < 4; ++i) u_max = std::acosh(1.0 + (kLogCut + u_max) / re);

  const double max_frequency = std::abs(z.imag()) * std::sinh(u_max) + 1.0;
  double h = std::min({0.25, u_max / 8.0, 0.5 / max_frequency});

  auto trapezoid = [&](double step, double& magnitude) {
    cplx s0 = 0.5, s1 = 0.5;
    magnitude = 0.5;
    for (int k = 1;; ++k) {
      const double u = k * step;
      if (u > u_max) break;
      const double c = std::cosh(u);
      const double sh = std::sinh(0.5 * u);
      // cosh u - 1 without cancellation; matters once |z| u^2 ~ 1 at large |z|.
      const cplx f = std::exp(-z * (2.0 * sh * sh));
      s0 += f;
      s1 += f * c;
      magnitude += std::abs(f) * c;
    }
    magnitude *= step;
    return std::pair<cplx, cplx>{s0 * step, s1 * step};
  };

  double magnitude = 0.0;
  auto previous = trapezoid(h, magnitude);
  for (int level = 0; level < 24; ++level) {
    h *= 0.5;
    auto current = trapezoid(h, magnitude);
    const double d0 = std::abs(current.first - previous.first);
    const double d1 = std::abs(current.second - previous.second);
    const double roundoff = 8.0 * kEps * magnitude;
    if (d0 <= 1e-14 * std::abs(current.first) + roundoff &&
        d1 <= 1e-14 * std::abs(current.second) + roundoff) {
      return {{current.first, d0 + roundoff}, {current.second, d1 + roundoff}};
    }
    previous = current;
  }
  throw Error(ErrorCode::NonConvergence, "K integral representation did not converge");
}

}  // namespace bessel_detail

ComplexAmplitude bessel_i_integer_scaled(int n, cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidInput, "bessel_i_integer requires finite z");
  }
  if (std::abs(z) <= kBesselISeriesRadius) {
    const auto s = bessel_detail::i_series(n, z);
    const double scale = std::exp(-std::abs(z.real()));
    return {s.value * scale, s.abs_error * scale};
  }
  return bessel_detail::i_integral_scaled(n, z);
}

ComplexAmplitude bessel_i_integer(int n, cplx z) {
  if (std::abs(z) <= kBesselISeriesRadius) {
    return bessel_detail::i_series(n, z);
  }
  if (std::abs(z.real()) > kMaxExponent) {
    throw Error(ErrorCode::Overflow, "I_n(z) exceeds the representable range");
  }
  const auto s = bessel_detail::i_integral_scaled(n, z);
  const double scale = std::exp(std::abs(z.real()));
  return {s.value * scale, s.abs_error * scale};
}

BesselK01 bessel_k01_scaled(cplx z) {
  if (std::abs(z) <= kBesselKSeriesRadius) {
    const auto s = bessel_detail::k01_series(z);
    const cplx scale = std::exp(z);
    const double m = std::abs(scale);
    return {{s.k0.value * scale, s.k0.abs_error * m}, {s.k1.value * scale, s.k1.abs_error * m}};
  }
  return bessel_detail::k01_integral_scaled(z);
}

BesselK01 bessel_k01(cplx z) {
  if (!(z.real() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorCode::InvalidInput, "bessel_k01 requires Re z > 0");
  }
  if (std::abs(z) <= kBesselKSeriesRadius) return bessel_detail::k01_series(z);
  const auto s = bessel_detail::k01_integral_scaled(z);
  const cplx scale = std::exp(-z);
  const double m = std::abs(scale);
  return {{s.k0.value * scale, s.k0.abs_error * m}, {s.k1.value * scale, s.k1.abs_error * m}};
}

}  // namespace wavekit
