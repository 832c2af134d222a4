#include "wavekit/moments.hpp"

#include <cmath>
#include <string>

#include "wavekit/bessel.hpp"

namespace wavekit {

std::string_view moment_name(Moment m) noexcept {
  switch (m) {
    case Moment::X: return "mean_x";
    case Moment::X2: return "mean_x2";
    case Moment::V: return "mean_v";
    case Moment::V2: return "mean_v2";
    case Moment::P: return "mean_p";
    case Moment::P2: return "mean_p2";
    case Moment::E: return "mean_E";
    case Moment::E2: return "mean_E2";
    case Moment::VX: return "corr_vx";
  }
  return "unknown";
}

std::string_view to_string(Provenance p) noexcept {
  return p == Provenance::ClosedForm ? "closed" : "quadrature";
}

double MomentSet::operator[](Moment m) const {
  const auto& v = value[index(m)];
  if (!v) {
    throw Error(ErrorCode::InvalidInput,
                std::string(moment_name(m)) + " is not available for this moment set");
  }
  return *v;
}

double MomentSet::position_variance() const {
  const double x = mean_x();
  return (*this)[Moment::X2] - x * x;
}

double MomentSet::velocity_variance() const {
  const double v = mean_v();
  return (*this)[Moment::V2] - v * v;
}

MomentSet moments_quadrature(const PacketParams& packet, const QuadratureSpec& spec) {
  const DispersionRelation& rel = packet.rel;
  auto f = [&](double p) {
    const double w = density(packet, p);
    const double e = rel.energy(p);
    const double v = rel.velocity(p);
    const cplx d = log_derivative(packet, p);
    const double x_kernel = (cplx{0.0, 1.0} * d).real();
    return Values<kMomentCount>{w * x_kernel, w * std::norm(d), w * v,     w * v * v,
                                w * p,        w * p * p,        w * e,     w * e * e,
                                2.0 * w * v * x_kernel};
  };
  // p and p^2 are not periodic on the lattice, so the zone is integrated
  // as an ordinary interval.
  const auto r = integrate_momentum<kMomentCount>(packet, f, 2.0, spec, false);
  MomentSet out;
  out.provenance = Provenance::Quadrature;
  for (Moment m : kAllMoments) {
    const auto i = MomentSet::index(m);
    out.set(m, r.value[i].real(), r.abs_error[i]);
  }
  return out;
}

namespace {

// int_alpha^inf K0(2m sqrt(a^2 - b^2)) da / K1(2m sqrt(alpha^2 - b^2)),
// integrated with exponentially scaled Bessel values to stay O(1).
ComplexAmplitude k0_tail_over_k1(double m, double alpha, double beta_r,
                                 const QuadratureSpec& spec) {
  const double z0 = 2.0 * m * std::sqrt((alpha - beta_r) * (alpha + beta_r));
  const double k1_scaled = bessel_k01_scaled(z0).k1.value.real();
  auto f = [&](double s) -> cplx {
    const double a = alpha + s;
    const double z = 2.0 * m * std::sqrt((a - beta_r) * (a + beta_r));
    return bessel_k01_scaled(z).k0.value.real() * std::exp(z0 - z) / k1_scaled;
  };
  return integrate_half_line(f, 0.0, 2.0 * m, spec);
}

}  // namespace

ComplexAmplitude relativistic_k0_tail(double mass, double alpha, double beta_r,
                                      const QuadratureSpec& spec) {
  const double z0 = 2.0 * mass * std::sqrt((alpha - beta_r) * (alpha + beta_r));
  const double k1 = bessel_k01(z0).k1.value.real();
  const ComplexAmplitude r = k0_tail_over_k1(mass, alpha, beta_r, spec);
  return {r.value * k1, r.abs_error * k1};
}

MomentSet moments_closed_form(const PacketParams& packet, const QuadratureSpec& spec) {
  validate_packet_params(packet.rel, packet.alpha, packet.beta_r, packet.beta_i);
  const double m = packet.rel.mass();
  const double al = packet.alpha;
  const double b = packet.beta_r;
  const double bi = packet.beta_i;

  MomentSet out;
  out.provenance = Provenance::ClosedForm;
  out.set(Moment::X, -bi);

  switch (packet.rel.kind()) {
    case DispersionKind::NonRelativistic: {
      const double mu = m * b / al;
      const double var = m / (2.0 * al);
      const double p2 = mu * mu + var;
      const double p4 = mu * mu * mu * mu + 6.0 * mu * mu * var + 3.0 * var * var;
      out.set(Moment::X2, al / (2.0 * m) + bi * bi);
      out.set(Moment::V, b / al);
      out.set(Moment::V2, 1.0 / (2.0 * m * al) + b * b / (al * al));
      out.set(Moment::P, mu);
      out.set(Moment::P2, p2);
      out.set(Moment::E, p2 / (2.0 * m));
      out.set(Moment::E2, p4 / (4.0 * m * m));
      break;
    }
    case DispersionKind::Lattice: {
      const double a = packet.rel.spacing();
      const double z = 2.0 * al / (m * a * a);
      const double ratio = bessel_i_integer_scaled(1, z).value.real() /
                           bessel_i_integer_scaled(0, z).value.real();
      out.set(Moment::X2, al * ratio / (2.0 * m) + bi * bi);
      out.set(Moment::V, 0.0);
      out.set(Moment::V2, ratio / (2.0 * m * al));
      out.set(Moment::P, 0.0);  // odd integrand over a symmetric zone
      out.set(Moment::E, -ratio / (m * a * a));
      out.set(Moment::E2, (1.0 - m * a * a * ratio / (2.0 * al)) / (m * m * a * a * a * a));
      break;
    }
    case DispersionKind::Relativistic: {
      const double s2 = (al - b) * (al + b);
      const double s = std::sqrt(s2);
      const double z = 2.0 * m * s;
      const BesselK01 k = bessel_k01_scaled(z);
      const double c = 1.0 + m * s * k.k0.value.real() / k.k1.value.real();
      const ComplexAmplitude tail = k0_tail_over_k1(m, al, b, spec);
      const double t = tail.value.real();
      const double p2 = m * m * b * b / s2 + (al * al + 3.0 * b * b) * c / (2.0 * s2 * s2);
      out.set(Moment::X2, s2 - 2.0 * m * al * s * t + bi * bi, 2.0 * m * al * s * tail.abs_error);
      out.set(Moment::V, b / al);
      out.set(Moment::V2, 1.0 - 2.0 * m * s * t / al, 2.0 * m * s * tail.abs_error / al);
      out.set(Moment::P, b * c / s2);
      out.set(Moment::P2, p2);
      out.set(Moment::E, al * c / s2 - 1.0 / (2.0 * al));
      out.set(Moment::E2, p2 + m * m);
      break;
    }
    case DispersionKind::Massless: {
      const double s2 = (al - b) * (al + b);
      const double p2 = (al * al + 3.0 * b * b) / (2.0 * s2 * s2);
      out.set(Moment::X2, s2 + bi * bi);
      out.set(Moment::V, b / al);
      out.set(Moment::V2, 1.0);
      out.set(Moment::P, b / s2);
      out.set(Moment::P2, p2);
      out.set(Moment::E, (al * al + b * b) / (2.0 * al * s2));
      out.set(Moment::E2, p2);
      break;
    }
  }
  // Minimal packets carry no initial position-velocity correlation.
  out.set(Moment::VX, 2.0 * out.mean_v() * out.mean_x());
  return out;
}

ComplexAmplitude mean_curvature(const PacketParams& packet, const QuadratureSpec& spec) {
  if (packet.rel.kind() == DispersionKind::Massless) {
    // d_p^2 |p| = 2 delta(p).
    return {2.0 * density(packet, 0.0), 0.0};
  }
  auto f = [&](double p) { return Values<1>{density(packet, p) * packet.rel.curvature(p)}; };
  const auto r = integrate_momentum<1>(packet, f, 2.0, spec);
  return {r.value[0], r.abs_error[0]};
}

double uncertainty_bound(const PacketParams& packet, const QuadratureSpec& spec) {
  return 0.5 * std::abs(mean_curvature(packet, spec).value.real());
}

double uncertainty_bound_closed(const PacketParams& packet, const QuadratureSpec& spec) {
  const double m = packet.rel.mass();
  switch (packet.rel.kind()) {
    case DispersionKind::NonRelativistic: return 1.0 / (2.0 * m);
    case DispersionKind::Lattice: {
      const double a = packet.rel.spacing();
      return 0.5 * a * a * std::abs(moments_closed_form(packet, spec)[Moment::E]);
    }
    case DispersionKind::Relativistic:
    case DispersionKind::Massless: {
      // (m^2/2)<E^-3> = Delta x^2 / alpha for these packets.
      const MomentSet c = moments_closed_form(packet, spec);
      return c.position_variance() / packet.alpha;
    }
  }
  return 0.0;
}

double saturation_residual(const PacketParams& packet, const QuadratureSpec& spec) {
  const MomentSet q = moments_quadrature(packet, spec);
  const double product = std::sqrt(q.position_variance() * q.velocity_variance());
  return product - uncertainty_bound(packet, spec);
}

double ehrenfest_position(const MomentSet& m0, double t) {
  return m0.mean_x() + m0.mean_v() * t;
}

double spreading_width_sq(const MomentSet& m0, double t) {
  const double linear = m0[Moment::VX] - 2.0 * m0.mean_v() * m0.mean_x();
  return m0.position_variance() + linear * t + m0.velocity_variance() * t * t;
}

}  // namespace wavekit
