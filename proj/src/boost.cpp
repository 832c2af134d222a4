#include "wavekit/boost.hpp"

#include <cmath>

namespace wavekit {

namespace {

constexpr double kInv2Pi = 0.15915494309189535;

void require_relativistic(const DispersionRelation& rel) {
  if (rel.kind() != DispersionKind::Relativistic) {
    throw Error(ErrorCode::KindMismatch,
                "Lorentz boosts of wave functions need the relativistic dispersion");
  }
}

}  // namespace

BoostParams BoostParams::lorentz(double u) {
  if (!(std::abs(u) < 1.0)) {
    throw Error(ErrorCode::InvalidBoost, "Lorentz boost velocity must satisfy |u| < 1");
  }
  return {u, 1.0 / std::sqrt((1.0 - u) * (1.0 + u))};
}

BoostParams BoostParams::galilean(double u) {
  if (!std::isfinite(u)) throw Error(ErrorCode::InvalidBoost, "boost velocity must be finite");
  return {u, 1.0};
}

PacketParams galilean_boost(const PacketParams& packet, double u) {
  if (packet.rel.kind() != DispersionKind::NonRelativistic) {
    throw Error(ErrorCode::KindMismatch, "Galilean boosts apply to non-relativistic packets");
  }
  BoostParams::galilean(u);
  return make_minimal(packet.rel, packet.alpha, packet.beta_r - u * packet.alpha,
                      packet.beta_i);
}

std::pair<double, double> lorentz_boost_params(double alpha, double beta_r, double u) {
  const BoostParams b = BoostParams::lorentz(u);
  return {b.gamma * (alpha - u * beta_r), b.gamma * (beta_r - u * alpha)};
}

BoostedWave lorentz_boost_wavefunction(std::function<cplx(double)> psi,
                                       const DispersionRelation& rel, double u,
                                       const MomentumWindow& window) {
  require_relativistic(rel);
  BoostedWave wave;
  wave.rel = rel;
  wave.boost = BoostParams::lorentz(u);
  wave.window = window;
  const double g = wave.boost.gamma;
  // Real positive root for A(-p').
  wave.residual_factor = [rel, g, u](double pb) {
    return std::sqrt(g * (1.0 + u * rel.velocity(pb)));
  };
  wave.evaluator = [psi = std::move(psi), rel, g, u, res = wave.residual_factor](double pb) {
    return res(pb) * psi(g * (pb + u * rel.energy(pb)));
  };
  return wave;
}

BoostedWave lorentz_boost_packet(const PacketParams& packet, double u,
                                 const QuadratureSpec& spec) {
  require_relativistic(packet.rel);
  const auto [alpha_b, beta_b] = lorentz_boost_params(packet.alpha, packet.beta_r, u);
  PacketParams envelope = packet;
  envelope.alpha = alpha_b;
  envelope.beta_r = beta_b;
  const MomentumWindow window = momentum_window(envelope, 2.0, spec);

  auto psi = [packet](double p) { return amplitude(packet, p); };
  BoostedWave wave = lorentz_boost_wavefunction(psi, packet.rel, u, window);
  wave.source_packet = packet;
  const double g = wave.boost.gamma;
  const DispersionRelation rel = packet.rel;
  wave.derivative = [packet, rel, g, u, eval = wave.evaluator](double pb) {
    const double jac = 1.0 + u * rel.velocity(pb);
    const double p = g * (pb + u * rel.energy(pb));
    // d ln A(-p')/dp' = u curv / (2 jac); d ln Psi/dp' = gamma jac D(p).
    const cplx dlog = u * rel.curvature(pb) / (2.0 * jac) + g * jac * log_derivative(packet, p);
    return dlog * eval(pb);
  };
  return wave;
}

BoostedMoments boosted_moments_quadrature(const BoostedWave& wave, const QuadratureSpec& spec) {
  const DispersionRelation& rel = wave.rel;
  const bool has_derivative = static_cast<bool>(wave.derivative);
  constexpr std::size_t N = kMomentCount + 2;
  auto f = [&](double p) {
    const cplx psi = wave.evaluator(p);
    const double w = kInv2Pi * std::norm(psi);
    const double e = rel.energy(p);
    const double v = rel.velocity(p);
    Values<N> out{};
    if (has_derivative) {
      const cplx x_psi = cplx(0.0, 1.0) * wave.derivative(p);
      const double x_mean = kInv2Pi * (std::conj(psi) * x_psi).real();
      out[MomentSet::index(Moment::X)] = x_mean;
      out[MomentSet::index(Moment::X2)] = kInv2Pi * std::norm(x_psi);
      out[MomentSet::index(Moment::VX)] = 2.0 * v * x_mean;
    }
    out[MomentSet::index(Moment::V)] = w * v;
    out[MomentSet::index(Moment::V2)] = w * v * v;
    out[MomentSet::index(Moment::P)] = w * p;
    out[MomentSet::index(Moment::P2)] = w * p * p;
    out[MomentSet::index(Moment::E)] = w * e;
    out[MomentSet::index(Moment::E2)] = w * e * e;
    out[kMomentCount] = w;
    out[kMomentCount + 1] = w * rel.curvature(p);
    return out;
  };
  const MomentumWindow& win = wave.window;
  const auto r = integrate_interval_values<N>(f, win.center - win.half_width,
                                              win.center + win.half_width, spec, 32);
  BoostedMoments out;
  out.moments.provenance = Provenance::Quadrature;
  for (Moment m : kAllMoments) {
    const bool positional = m == Moment::X || m == Moment::X2 || m == Moment::VX;
    if (positional && !has_derivative) continue;
    const auto i = MomentSet::index(m);
    out.moments.set(m, r.value[i].real(), r.abs_error[i]);
  }
  out.norm = {r.value[kMomentCount], r.abs_error[kMomentCount]};
  out.mean_curvature = r.value[kMomentCount + 1].real();
  return out;
}

BoostedPrediction boosted_expectations(const PacketParams& packet, const MomentSet& m0,
                                       double u, const QuadratureSpec& spec) {
  require_relativistic(packet.rel);
  const BoostParams b = BoostParams::lorentz(u);
  const DispersionRelation& rel = packet.rel;
  BoostedPrediction out;
  out.mean_E = b.gamma * (m0[Moment::E] - u * m0[Moment::P]);
  out.mean_p = b.gamma * (m0[Moment::P] - u * m0[Moment::E]);

  // Boosted position operator in the rest frame:
  //   x_b Phi = i gamma [(1 + u v') d_p Phi + (u/2) d_p v' Phi],
  //   v' = (v - u)/(1 - u v).
  auto f = [&](double p) {
    const double w = density(packet, p);
    const double v = rel.velocity(p);
    const double denom = 1.0 - u * v;
    const double vb = (v - u) / denom;
    const double vb_p = rel.curvature(p) * (1.0 - u * u) / (denom * denom);
    const cplx kernel = b.gamma * ((1.0 + u * vb) * log_derivative(packet, p) + 0.5 * u * vb_p);
    return Values<3>{w * vb, w * (cplx(0.0, 1.0) * kernel).real(), w * std::norm(kernel)};
  };
  const auto r = integrate_momentum<3>(packet, f, 2.0, spec);
  out.mean_v = r.value[0].real();
  out.mean_x = r.value[1].real();
  out.mean_x2 = r.value[2].real();
  return out;
}

}  // namespace wavekit
