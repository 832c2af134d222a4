#include "wavekit/cosmology.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavekit/detail/gauss_legendre.hpp"

namespace wavekit {

ScaleFactorModel ScaleFactorModel::power_law(double r0, double t0, double exponent) {
  if (!(r0 > 0.0) || !(t0 > 0.0) || !(exponent >= 0.0) || !std::isfinite(r0 * t0 * exponent)) {
    throw Error(ErrorCode::InvalidInput, "power law needs R0 > 0, t0 > 0, n >= 0");
  }
  ScaleFactorModel m;
  m.kind_ = ScaleFactorKind::PowerLaw;
  m.r0_ = r0;
  m.t0_ = t0;
  m.exponent_ = exponent;
  return m;
}

ScaleFactorModel ScaleFactorModel::exponential(double r0, double rate) {
  if (!(r0 > 0.0) || !std::isfinite(r0) || !std::isfinite(rate)) {
    throw Error(ErrorCode::InvalidInput, "exponential model needs R0 > 0 and finite H");
  }
  ScaleFactorModel m;
  m.kind_ = ScaleFactorKind::Exponential;
  m.r0_ = r0;
  m.exponent_ = rate;
  return m;
}

ScaleFactorModel ScaleFactorModel::tabulated(std::vector<std::pair<double, double>> nodes) {
  if (nodes.size() < 2) throw Error(ErrorCode::InvalidInput, "tabulated model needs >= 2 nodes");
  ScaleFactorModel m;
  m.kind_ = ScaleFactorKind::Tabulated;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [t, r] = nodes[i];
    if (!(r > 0.0) || !std::isfinite(t) || !std::isfinite(r)) {
      throw Error(ErrorCode::InvalidInput, "tabulated R must be positive and finite");
    }
    if (i > 0 && !(t > nodes[i - 1].first)) {
      throw Error(ErrorCode::InvalidInput, "tabulated times must be strictly increasing");
    }
    m.t_nodes_.push_back(t);
    m.log_r_nodes_.push_back(std::log(r));
  }
  if (m.t_nodes_.front() > 0.0 || m.t_nodes_.back() < 0.0) {
    throw Error(ErrorCode::InvalidInput, "tabulated model must cover t = 0");
  }
  return m;
}

double ScaleFactorModel::operator()(double t) const {
  switch (kind_) {
    case ScaleFactorKind::PowerLaw: {
      const double base = 1.0 + t / t0_;
      if (!(base > 0.0)) {
        throw Error(ErrorCode::InvalidInput, "power-law scale factor undefined at t = " +
                                                 std::to_string(t));
      }
      return r0_ * std::pow(base, exponent_);
    }
    case ScaleFactorKind::Exponential: return r0_ * std::exp(exponent_ * t);
    case ScaleFactorKind::Tabulated: {
      if (t < t_nodes_.front() || t > t_nodes_.back()) {
        throw Error(ErrorCode::InvalidInput,
                    "t = " + std::to_string(t) + " outside the tabulated range");
      }
      auto it = std::upper_bound(t_nodes_.begin(), t_nodes_.end(), t);
      std::size_t hi = static_cast<std::size_t>(it - t_nodes_.begin());
      if (hi >= t_nodes_.size()) hi = t_nodes_.size() - 1;
      const std::size_t lo = hi - 1;
      const double s = (t - t_nodes_[lo]) / (t_nodes_[hi] - t_nodes_[lo]);
      return std::exp(log_r_nodes_[lo] + s * (log_r_nodes_[hi] - log_r_nodes_[lo]));
    }
  }
  return 1.0;
}

bool ScaleFactorModel::expanding() const {
  switch (kind_) {
    case ScaleFactorKind::PowerLaw: return exponent_ > 0.0;
    case ScaleFactorKind::Exponential: return exponent_ > 0.0;
    case ScaleFactorKind::Tabulated:
      for (std::size_t i = 1; i < log_r_nodes_.size(); ++i) {
        if (!(log_r_nodes_[i] > log_r_nodes_[i - 1])) return false;
      }
      return true;
  }
  return false;
}

double classical_velocity(double v0, double r0, double r) {
  if (!(std::abs(v0) <= 1.0) || !(r0 > 0.0) || !(r > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "classical_velocity needs |v0| <= 1 and R0, R > 0");
  }
  const double s = r0 / r;
  return s * v0 / std::sqrt(1.0 - v0 * v0 + v0 * v0 * s * s);
}

namespace {

void require_continuum(const PacketParams& packet) {
  if (packet.rel.kind() == DispersionKind::Lattice) {
    throw Error(ErrorCode::KindMismatch, "expanding-universe propagation needs a continuum kind");
  }
}

// Fixed composite Gauss-Legendre rules in time, one panel count per segment,
// chosen so D(t, p) is accurate for probe momenta across the packet. A fixed
// rule keeps D smooth in p for the outer adaptive momentum quadrature.
class DriftIntegrator {
 public:
  DriftIntegrator(const PacketParams& packet, const ScaleFactorModel& model,
                  const std::vector<double>& t_values, const QuadratureSpec& spec)
      : packet_(packet), model_(model), t_values_(t_values), r0_(model.r0()) {
    const MomentumWindow w = momentum_window(packet, 2.0, spec);
    std::vector<double> probes;
    for (int k = -4; k <= 4; ++k) probes.push_back(w.center + 0.2 * k * w.half_width);
    const double tol = 0.1 * std::min(1e-9, spec.relative_tolerance);
    panels_.assign(t_values.size(), 0);
    for (std::size_t k = 1; k < t_values.size(); ++k) {
      int panels = 1;
      while (true) {
        double worst = 0.0;
        for (double p : probes) {
          const double coarse = segment(p, k, panels);
          const double fine = segment(p, k, 2 * panels);
          const double scale = std::abs(fine) + 1e-6 * (t_values[k] - t_values[k - 1]);
          worst = std::max(worst, std::abs(fine - coarse) / (scale + 1e-300));
        }
        if (worst < tol) break;
        panels *= 2;
        if (panels > (1 << 16)) {
          throw Error(ErrorCode::NonConvergence, "time integration did not converge");
        }
      }
      panels_[k] = 2 * panels;
    }
  }

  /// D(t_k, p).
  double drift(double p, std::size_t k) const {
    double sum = 0.0;
    for (std::size_t j = 1; j <= k; ++j) sum += segment(p, j, panels_[j]);
    return sum;
  }

 private:
  double segment(double p, std::size_t k, int panels) const {
    const double a = t_values_[k - 1];
    const double b = t_values_[k];
    if (b == a) return 0.0;
    return detail::composite_gauss_legendre<20>(
        [&](double t) {
          const double r = model_(t);
          return packet_.rel.velocity(p * r0_ / r) / r;
        },
        a, b, panels);
  }

  const PacketParams& packet_;
  const ScaleFactorModel& model_;
  const std::vector<double>& t_values_;
  double r0_;
  std::vector<int> panels_;
};

}  // namespace

ComplexAmplitude mean_velocity(const PacketParams& packet, const ScaleFactorModel& model,
                               double t, const QuadratureSpec& spec) {
  require_continuum(packet);
  const double ratio = model.r0() / model(t);
  auto f = [&](double p) {
    return Values<1>{density(packet, p) * packet.rel.velocity(p * ratio)};
  };
  const auto r = integrate_momentum<1>(packet, f, 2.0, spec);
  return {r.value[0], r.abs_error[0]};
}

ComplexAmplitude conformal_time(const ScaleFactorModel& model, double t,
                                const QuadratureSpec& spec) {
  return integrate_interval([&](double s) -> cplx { return 1.0 / model(s); }, 0.0, t, spec);
}

ComovingTrace comoving_trace(const PacketParams& packet, const ScaleFactorModel& model,
                             const std::vector<double>& t_values, const QuadratureSpec& spec) {
  require_continuum(packet);
  if (t_values.empty() || t_values.front() != 0.0) {
    throw Error(ErrorCode::InvalidInput, "comoving trace times must start at 0");
  }
  for (std::size_t k = 1; k < t_values.size(); ++k) {
    if (!(t_values[k] >= t_values[k - 1])) {
      throw Error(ErrorCode::InvalidInput, "comoving trace times must be ascending");
    }
  }
  const double r0 = model.r0();
  const MomentSet m0 = moments_quadrature(packet, spec);
  const DriftIntegrator drift(packet, model, t_values, spec);

  ComovingTrace trace;
  trace.t_values = t_values;
  const std::size_t n = t_values.size();
  trace.mean_rho.resize(n);
  trace.mean_rho2.resize(n);
  trace.mean_x.resize(n);
  trace.mean_v.resize(n);

  for (std::size_t k = 0; k < n; ++k) {
    double d_mean = 0.0, d_sq = 0.0, cross = 0.0;
    if (k > 0) {
      auto f = [&](double p) {
        const double w = density(packet, p);
        const double d = drift.drift(p, k);
        const double x_kernel = (cplx(0.0, 1.0) * log_derivative(packet, p)).real();
        return Values<3>{w * d, w * d * d, 2.0 * w * d * x_kernel};
      };
      const auto r = integrate_momentum<3>(packet, f, 2.0, spec);
      d_mean = r.value[0].real();
      d_sq = r.value[1].real();
      cross = r.value[2].real();
    }
    const double rho = m0.mean_x() / r0 + d_mean;
    trace.mean_rho[k] = rho;
    trace.mean_rho2[k] = m0[Moment::X2] / (r0 * r0) + cross / r0 + d_sq;
    trace.mean_x[k] = model(t_values[k]) * rho;
    trace.mean_v[k] = mean_velocity(packet, model, t_values[k], spec).value.real();
  }
  return trace;
}

}  // namespace wavekit
