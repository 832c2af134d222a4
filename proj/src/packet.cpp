#include "wavekit/packet.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wavekit/bessel.hpp"

namespace wavekit {

namespace {

constexpr double kLog2Pi = 1.8378770664093453;

bool needs_light_cone(DispersionKind kind) {
  return kind == DispersionKind::Relativistic || kind == DispersionKind::Massless;
}

// Exponent -alpha E(p) + beta_r p of |Phi| (without ln A).
double exponent(const PacketParams& packet, double p) noexcept {
  return -packet.alpha * packet.rel.energy(p) + packet.beta_r * p;
}

double peak_momentum(const PacketParams& packet) {
  const double m = packet.rel.mass();
  switch (packet.rel.kind()) {
    case DispersionKind::NonRelativistic: return m * packet.beta_r / packet.alpha;
    case DispersionKind::Relativistic:
      return m * packet.beta_r /
             std::sqrt((packet.alpha - packet.beta_r) * (packet.alpha + packet.beta_r));
    case DispersionKind::Lattice:
    case DispersionKind::Massless: return 0.0;
  }
  return 0.0;
}

}  // namespace

void validate_packet_params(const DispersionRelation& rel, double alpha, double beta_r,
                            double beta_i) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidParams, "alpha must be positive and finite");
  }
  if (!std::isfinite(beta_r) || !std::isfinite(beta_i)) {
    throw Error(ErrorCode::InvalidParams, "beta must be finite");
  }
  if (needs_light_cone(rel.kind()) && !(alpha > std::abs(beta_r))) {
    throw Error(ErrorCode::InvalidParams,
                "alpha must exceed |beta_r| for relativistic and massless packets");
  }
  if (rel.kind() == DispersionKind::Lattice) {
    if (beta_r != 0.0) {
      throw Error(ErrorCode::LatticePeriodicity,
                  "lattice packets need beta_r = 0 to stay periodic in the Brillouin zone");
    }
    const double sites = beta_i / rel.spacing();
    if (std::abs(sites - std::round(sites)) > 1e-9 * std::max(1.0, std::abs(sites))) {
      throw Error(ErrorCode::LatticePeriodicity,
                  "lattice packets need beta_i to be a multiple of the spacing");
    }
  }
}

double closed_form_log_norm(const DispersionRelation& rel, double alpha, double beta_r) {
  const double m = rel.mass();
  double log_inv_a2 = 0.0;  // ln |A|^-2
  switch (rel.kind()) {
    case DispersionKind::NonRelativistic:
      log_inv_a2 = -kLog2Pi + 0.5 * std::log(std::numbers::pi * m / alpha) +
                   m * beta_r * beta_r / alpha;
      break;
    case DispersionKind::Lattice: {
      const double z = 2.0 * alpha / (m * rel.spacing() * rel.spacing());
      const double i0 = bessel_i_integer_scaled(0, z).value.real();
      log_inv_a2 = std::log(i0) + z - std::log(rel.spacing());
      break;
    }
    case DispersionKind::Relativistic: {
      const double s = std::sqrt((alpha - beta_r) * (alpha + beta_r));
      const double z = 2.0 * m * s;
      const double k1 = bessel_k01_scaled(z).k1.value.real();
      log_inv_a2 = std::log(m * alpha / (std::numbers::pi * s)) + std::log(k1) - z;
      break;
    }
    case DispersionKind::Massless:
      log_inv_a2 = std::log(alpha / ((alpha - beta_r) * (alpha + beta_r))) - kLog2Pi;
      break;
  }
  return -0.5 * log_inv_a2;
}

PacketParams make_minimal(const DispersionRelation& rel, double alpha, double beta_r,
                          double beta_i) {
  validate_packet_params(rel, alpha, beta_r, beta_i);
  PacketParams packet;
  packet.rel = rel;
  packet.alpha = alpha;
  packet.beta_r = beta_r;
  packet.beta_i = beta_i;
  packet.log_norm_A = closed_form_log_norm(rel, alpha, beta_r);
  return packet;
}

cplx amplitude(const PacketParams& packet, double p) {
  if (!packet.rel.in_domain(p)) {
    throw Error(ErrorCode::DomainError,
                "momentum " + std::to_string(p) + " outside the Brillouin zone");
  }
  const double modulus = std::exp(packet.log_norm_A + exponent(packet, p));
  if (packet.beta_i == 0.0) return {modulus, 0.0};
  return std::polar(modulus, packet.beta_i * p);
}

double log_density(const PacketParams& packet, double p) noexcept {
  return 2.0 * (packet.log_norm_A + exponent(packet, p)) - kLog2Pi;
}

double density(const PacketParams& packet, double p) noexcept {
  return std::exp(log_density(packet, p));
}

cplx log_derivative(const PacketParams& packet, double p) noexcept {
  return {-packet.alpha * packet.rel.velocity(p) + packet.beta_r, packet.beta_i};
}

MomentumWindow momentum_window(const PacketParams& packet, double power,
                               const QuadratureSpec& spec) {
  const MomentumDomain domain = packet.rel.momentum_domain();
  if (domain.periodic) {
    return {0.5 * (domain.lower + domain.upper), 0.5 * domain.period(), true};
  }
  // Drop of the log weight needed at the window edge; 20 extra nats leave
  // room for polynomial factors in moment integrands.
  const double floor = std::max(spec.absolute_floor, std::numeric_limits<double>::min());
  const double drop = std::log(1.0 / floor) + std::log(1e4) + 20.0;

  const double p0 = peak_momentum(packet);
  const double top = power * exponent(packet, p0);
  auto deep_enough = [&](double half) {
    return top - power * exponent(packet, p0 - half) >= drop &&
           top - power * exponent(packet, p0 + half) >= drop;
  };
  double half = 1.0;
  int guard = 0;
  while (!deep_enough(half)) {
    half *= 2.0;
    if (++guard > 200) {
      throw Error(ErrorCode::NonConvergence, "momentum window search did not terminate");
    }
  }
  while (half > 1e-300 && deep_enough(0.5 * half)) half *= 0.5;
  return {p0, half, false};
}

ComplexAmplitude norm_quadrature(const PacketParams& packet, const QuadratureSpec& spec) {
  auto f = [&](double p) { return Values<1>{density(packet, p)}; };
  const auto r = integrate_momentum<1>(packet, f, 2.0, spec);
  return {r.value[0], r.abs_error[0]};
}

ComplexAmplitude mean_velocity_quadrature(const PacketParams& packet,
                                          const QuadratureSpec& spec) {
  auto f = [&](double p) { return Values<1>{density(packet, p) * packet.rel.velocity(p)}; };
  const auto r = integrate_momentum<1>(packet, f, 2.0, spec);
  return {r.value[0], r.abs_error[0]};
}

namespace {

// Bisection for a monotone increasing g on [lo, hi] with g(lo) < 0 < g(hi).
template <class G>
double bisect(G&& g, double lo, double hi, double tol) {
  for (int i = 0; i < 200 && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    (g(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double position_spread_quadrature(const PacketParams& packet, const QuadratureSpec& spec) {
  auto f = [&](double p) {
    const double w = density(packet, p);
    const cplx d = log_derivative(packet, p);
    return Values<2>{w * std::norm(d), w * (-d.imag())};
  };
  const auto r = integrate_momentum<2>(packet, f, 2.0, spec);
  const double mean = r.value[1].real();
  return std::sqrt(std::max(0.0, r.value[0].real() - mean * mean));
}

// beta_r for fixed alpha such that the quadrature <v> hits the target.
double solve_beta_r(const DispersionRelation& rel, double alpha, double target,
                    const QuadratureSpec& spec) {
  auto residual = [&](double beta_r) {
    const PacketParams pk = make_minimal(rel, alpha, beta_r, 0.0);
    return mean_velocity_quadrature(pk, spec).value.real() - target;
  };
  if (target == 0.0) return 0.0;
  double lo = 0.0;
  double hi = 0.0;
  if (needs_light_cone(rel.kind())) {
    const double eps = 1e-6 * alpha;
    lo = -alpha + eps;
    hi = alpha - eps;
    if (residual(lo) > 0.0 || residual(hi) < 0.0) {
      throw Error(ErrorCode::Unsatisfiable,
                  "target velocity not reachable with |beta_r| < alpha - 1e-6 alpha");
    }
  } else {
    double span = alpha * std::max(1.0, std::abs(target));
    int guard = 0;
    while (residual(-span) > 0.0 || residual(span) < 0.0) {
      span *= 2.0;
      if (++guard > 60) throw Error(ErrorCode::NonConvergence, "beta_r bracket search failed");
    }
    lo = -span;
    hi = span;
  }
  return bisect(residual, lo, hi, 1e-14 * std::max(1.0, hi - lo));
}

}  // namespace

PacketParams solve_parameters(const DispersionRelation& rel, const MomentTargets& targets,
                              WidthMode mode, const QuadratureSpec& spec) {
  if (!(targets.width_parameter > 0.0) || !std::isfinite(targets.width_parameter)) {
    throw Error(ErrorCode::InvalidParams, "width parameter must be positive");
  }
  if (!(std::abs(targets.mean_velocity) < rel.max_speed())) {
    throw Error(ErrorCode::Unsatisfiable, "mean velocity must be below the maximal speed");
  }
  if (rel.kind() == DispersionKind::Lattice && targets.mean_velocity != 0.0) {
    throw Error(ErrorCode::Unsatisfiable,
                "lattice minimal packets are at rest; mean velocity must be 0");
  }
  const double beta_i = -targets.mean_position;

  auto with_alpha = [&](double alpha) {
    const double beta_r = rel.kind() == DispersionKind::Lattice
                              ? 0.0
                              : solve_beta_r(rel, alpha, targets.mean_velocity, spec);
    return make_minimal(rel, alpha, beta_r, beta_i);
  };

  if (mode == WidthMode::Alpha) return with_alpha(targets.width_parameter);

  const double target = targets.width_parameter;
  auto residual = [&](double log_alpha) {
    return position_spread_quadrature(with_alpha(std::exp(log_alpha)), spec) - target;
  };
  double lo = std::log(target) - 1.0;
  double hi = std::log(target) + 1.0;
  int guard = 0;
  while (residual(lo) > 0.0) {
    lo -= 2.0;
    if (++guard > 60) throw Error(ErrorCode::NonConvergence, "alpha bracket search failed");
  }
  while (residual(hi) < 0.0) {
    hi += 2.0;
    if (++guard > 60) throw Error(ErrorCode::NonConvergence, "alpha bracket search failed");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) <= 1e-10 * target) return with_alpha(std::exp(mid));
    (r < 0.0 ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  const PacketParams best = with_alpha(std::exp(0.5 * (lo + hi)));
  if (std::abs(position_spread_quadrature(best, spec) - target) > 1e-8 * target) {
    throw Error(ErrorCode::NonConvergence, "alpha search did not reach the target spread");
  }
  return best;
}

}  // namespace wavekit
