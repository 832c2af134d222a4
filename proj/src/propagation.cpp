#include "wavekit/propagation.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wavekit/bessel.hpp"

namespace wavekit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLog2Pi = 1.8378770664093453;
constexpr cplx kI{0.0, 1.0};
constexpr double kConeBand = 1e-12;

int lattice_site(const DispersionRelation& rel, double x) {
  const double n = x / rel.spacing();
  const double rounded = std::round(n);
  if (std::abs(n - rounded) > 1e-9 * std::max(1.0, std::abs(n)) ||
      std::abs(rounded) > 1e9) {
    throw Error(ErrorCode::NonIntegerSite,
                "lattice position " + std::to_string(x) + " is not a lattice site");
  }
  return static_cast<int>(rounded);
}

void check_real_cone(double x, double t) {
  if (std::abs(x * x - t * t) < kConeBand * std::max(x * x, t * t)) {
    throw Error(ErrorCode::LightConeSingular,
                "point on the light cone |x| = |t|: x = " + std::to_string(x));
  }
}

// G(x, t) * exp(log_scale), with the scale folded into the exponentials so
// large normalizations and tiny Bessel factors do not over/underflow.
ComplexAmplitude greens_scaled(const DispersionRelation& rel, cplx x, cplx t,
                               double log_scale) {
  const bool real_point = x.imag() == 0.0 && t.imag() == 0.0;
  const double m = rel.mass();
  switch (rel.kind()) {
    case DispersionKind::NonRelativistic: {
      if (t == 0.0) {
        throw Error(ErrorCode::InvalidInput, "non-relativistic Green's function needs t != 0");
      }
      const cplx prefactor = std::sqrt(m / (2.0 * kPi * kI * t));
      const cplx value = prefactor * std::exp(kI * m * x * x / (2.0 * t) + log_scale);
      return {value, 0.0};
    }
    case DispersionKind::Lattice: {
      if (x.imag() != 0.0) {
        throw Error(ErrorCode::NonIntegerSite, "lattice Green's function needs a real site");
      }
      const int n = lattice_site(rel, x.real());
      const double a = rel.spacing();
      const cplx z = kI * t / (m * a * a);
      const ComplexAmplitude scaled = bessel_i_integer_scaled(n, z);
      const double factor = std::exp(std::abs(z.real()) + log_scale) / a;
      return {scaled.value * factor, scaled.abs_error * factor};
    }
    case DispersionKind::Relativistic: {
      if (real_point) {
        const double xr = x.real();
        const double tr = t.real();
        check_real_cone(xr, tr);
        if (std::abs(xr) < std::abs(tr)) {
          const cplx g = relativistic_greens_jy_form(m, xr, tr) * std::exp(log_scale);
          return {g, 0.0};
        }
        if (tr == 0.0) return {0.0, 0.0};
      }
      const cplx root = std::sqrt(x * x - t * t);
      if (root == 0.0) {
        throw Error(ErrorCode::LightConeSingular, "complexified light cone x^2 = t^2");
      }
      const cplx z = m * root;
      const BesselK01 k = bessel_k01_scaled(z);
      const cplx factor = kI * m * t / (kPi * root) * std::exp(log_scale - z);
      return {factor * k.k1.value, std::abs(factor) * k.k1.abs_error};
    }
    case DispersionKind::Massless: {
      if (real_point) check_real_cone(x.real(), t.real());
      const cplx d = x * x - t * t;
      if (d == 0.0) {
        throw Error(ErrorCode::LightConeSingular, "complexified light cone x^2 = t^2");
      }
      return {kI / kPi * t / d * std::exp(log_scale), 0.0};
    }
  }
  return {};
}

}  // namespace

ComplexAmplitude greens_closed(const DispersionRelation& rel, cplx x, cplx t) {
  return greens_scaled(rel, x, t, 0.0);
}

cplx relativistic_greens_k_form(double mass, double x, double t) {
  check_real_cone(x, t);
  // Im t -> 0^- selects the upper side of the cut for t > 0.
  const double d = x * x - t * t;
  cplx root;
  if (d > 0.0) {
    root = std::sqrt(d);
  } else {
    root = cplx(0.0, t > 0.0 ? std::sqrt(-d) : -std::sqrt(-d));
  }
  const BesselK01 k = bessel_k01_scaled(mass * root);
  return kI * mass * t / (kPi * root) * std::exp(-mass * root) * k.k1.value;
}

cplx relativistic_greens_jy_form(double mass, double x, double t) {
  check_real_cone(x, t);
  if (!(std::abs(x) < std::abs(t))) {
    throw Error(ErrorCode::DomainError, "J/Y form needs a time-like point |x| < |t|");
  }
  const double r = std::sqrt((std::abs(t) - x) * (std::abs(t) + x));
  const auto [j1, y1] = bessel_j1_y1(mass * r);
  const cplx g = -(mass * std::abs(t) / (2.0 * r)) * cplx(j1, -y1);
  return t > 0.0 ? g : std::conj(g);
}

ComplexAmplitude evolve_closed(const PacketParams& packet, double x, double t) {
  const cplx xc(x + packet.beta_i, -packet.beta_r);
  const cplx tc(t, -packet.alpha);
  return greens_scaled(packet.rel, xc, tc, packet.log_norm_A);
}

ComplexAmplitude evolve_quadrature(const PacketParams& packet, double x, double t,
                                   const QuadratureSpec& spec) {
  const DispersionRelation& rel = packet.rel;
  if (rel.kind() == DispersionKind::Lattice) lattice_site(rel, x + packet.beta_i);
  auto f = [&](double p) {
    const double e = rel.energy(p);
    const double modulus =
        std::exp(packet.log_norm_A - packet.alpha * e + packet.beta_r * p - kLog2Pi);
    return Values<1>{std::polar(modulus, (packet.beta_i + x) * p - e * t)};
  };
  const auto r = integrate_momentum<1>(packet, f, 1.0, spec);
  return {r.value[0], r.abs_error[0]};
}

ComplexAmplitude evolve(const PacketParams& packet, double x, double t,
                        EvolutionMethod method, const QuadratureSpec& spec, bool* fallback) {
  if (fallback) *fallback = false;
  if (method == EvolutionMethod::Quadrature) return evolve_quadrature(packet, x, t, spec);
  try {
    return evolve_closed(packet, x, t);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::LightConeSingular) throw;
    if (fallback) *fallback = true;
    return evolve_quadrature(packet, x, t, spec);
  }
}

DensityGrid density_grid(const PacketParams& packet, const std::vector<double>& x_values,
                         const std::vector<double>& t_values, EvolutionMethod method,
                         const QuadratureSpec& spec) {
  for (std::size_t j = 1; j < x_values.size(); ++j) {
    if (!(x_values[j] > x_values[j - 1])) {
      throw Error(ErrorCode::InvalidInput, "x grid must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < t_values.size(); ++i) {
    if (!(t_values[i] > t_values[i - 1])) {
      throw Error(ErrorCode::InvalidInput, "t grid must be strictly increasing");
    }
  }
  DensityGrid grid;
  grid.x_values = x_values;
  grid.t_values = t_values;
  grid.method = method;
  grid.density.assign(t_values.size(), std::vector<double>(x_values.size()));
  grid.abs_error.assign(t_values.size(), std::vector<double>(x_values.size()));
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    for (std::size_t j = 0; j < x_values.size(); ++j) {
      bool fell_back = false;
      const ComplexAmplitude phi =
          evolve(packet, x_values[j], t_values[i], method, spec, &fell_back);
      if (fell_back) grid.fallback_points.emplace_back(i, j);
      grid.density[i][j] = std::norm(phi.value);
      grid.abs_error[i][j] = 2.0 * std::abs(phi.value) * phi.abs_error +
                             phi.abs_error * phi.abs_error;
    }
  }
  return grid;
}

double grid_row_probability(const DensityGrid& grid, std::size_t row, double spacing) {
  const auto& xs = grid.x_values;
  const auto& d = grid.density.at(row);
  double sum = 0.0;
  if (spacing > 0.0) {
    for (double v : d) sum += v;
    return spacing * sum;
  }
  for (std::size_t j = 1; j < xs.size(); ++j) {
    sum += 0.5 * (d[j] + d[j - 1]) * (xs[j] - xs[j - 1]);
  }
  return sum;
}

namespace {

PositionMoments lattice_position_moments(const PacketParams& packet, double t,
                                         EvolutionMethod method, const QuadratureSpec& spec,
                                         double center) {
  const double a = packet.rel.spacing();
  const long n0 = std::lround((center + packet.beta_i) / a);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, err = 0.0;
  auto add = [&](long n) {
    const double x = n * a - packet.beta_i;
    const ComplexAmplitude phi = evolve(packet, x, t, method, spec);
    const double w = a * std::norm(phi.value);
    const double y = x - center;
    s0 += w;
    s1 += w * y;
    s2 += w * y * y;
    err += 2.0 * a * std::abs(phi.value) * phi.abs_error;
    return w;
  };
  add(n0);
  for (int dir : {-1, 1}) {
    int quiet = 0;
    for (long k = 1; k < 100000; ++k) {
      const double w = add(n0 + dir * k);
      quiet = (w * (1.0 + k * k * a * a) < 1e-20 * s0) ? quiet + 1 : 0;
      if (quiet >= 8) break;
    }
  }
  PositionMoments out;
  out.norm = s0;
  out.mean = center * s0 + s1;
  out.mean_sq = s2 + 2.0 * center * s1 + center * center * s0;
  out.abs_error = {err, err, err};
  return out;
}

}  // namespace

// Widths beyond which position_moments evaluates the closed form in quadrature mode.
constexpr double kQuadratureReach = 50.0;

PositionMoments position_moments(const PacketParams& packet, double t, EvolutionMethod method,
                                 const QuadratureSpec& spec) {
  const MomentSet m0 = moments_closed_form(packet, spec);
  const double center = ehrenfest_position(m0, t);
  if (packet.rel.kind() == DispersionKind::Lattice) {
    return lattice_position_moments(packet, t, method, spec, center);
  }
  const double scale = std::sqrt(spreading_width_sq(m0, t));
  auto f = [&](double theta) {
    const double tn = std::tan(theta);
    if (std::abs(tn) > 1e8) return Values<3>{};
    const double y = scale * tn;
    const double jac = scale * (1.0 + tn * tn);
    // Oscillatory inner integrals cannot resolve the far tail; use the exact density there.
    const EvolutionMethod m = std::abs(tn) > kQuadratureReach ? EvolutionMethod::Closed : method;
    const double w = std::norm(evolve(packet, center + y, t, m, spec).value) * jac;
    return Values<3>{w, w * y, w * y * y};
  };
  const double h = 0.5 * std::numbers::pi;
  const auto r = integrate_interval_values<3>(f, -h, h, spec, 8);
  const double s0 = r.value[0].real();
  const double s1 = r.value[1].real();
  const double s2 = r.value[2].real();
  PositionMoments out;
  out.norm = s0;
  out.mean = center * s0 + s1;
  out.mean_sq = s2 + 2.0 * center * s1 + center * center * s0;
  out.abs_error = {r.abs_error[0], r.abs_error[1] + std::abs(center) * r.abs_error[0],
                   r.abs_error[2] + 2.0 * std::abs(center) * r.abs_error[1] +
                       center * center * r.abs_error[0]};
  return out;
}

ComplexAmplitude probability_in(const PacketParams& packet, double t, double lo, double hi,
                                EvolutionMethod method, const QuadratureSpec& spec) {
  if (packet.rel.kind() == DispersionKind::Lattice) {
    const double a = packet.rel.spacing();
    const long first = static_cast<long>(std::ceil((lo + packet.beta_i) / a - 1e-9));
    const long last = static_cast<long>(std::floor((hi + packet.beta_i) / a + 1e-9));
    double sum = 0.0;
    for (long n = first; n <= last; ++n) {
      sum += a * std::norm(evolve(packet, n * a - packet.beta_i, t, method, spec).value);
    }
    return {sum, 0.0};
  }
  auto f = [&](double x) { return Values<1>{std::norm(evolve(packet, x, t, method, spec).value)}; };
  const auto r = integrate_interval_values<1>(f, lo, hi, spec, 16);
  return {r.value[0], r.abs_error[0]};
}

}  // namespace wavekit
