#include "wavekit/numerics.hpp"

#include <cmath>
#include <limits>

namespace wavekit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::CurvatureSingular: return "CurvatureSingular";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::LatticePeriodicity: return "LatticePeriodicityError";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::LightConeSingular: return "LightConeSingular";
    case ErrorCode::NonIntegerSite: return "NonIntegerSite";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::InvalidBoost: return "InvalidBoost";
  }
  return "Unknown";
}

void QuadratureSpec::validate() const {
  if (!(relative_tolerance > 0.0 && relative_tolerance < 1.0)) {
    throw Error(ErrorCode::InvalidInput, "relative_tolerance must lie in (0, 1)");
  }
  if (!(absolute_floor >= 0.0) || !std::isfinite(absolute_floor)) {
    throw Error(ErrorCode::InvalidInput, "absolute_floor must be finite and >= 0");
  }
  if (max_subdivisions < 8) {
    throw Error(ErrorCode::InvalidInput, "max_subdivisions must be >= 8");
  }
  if (!(truncation_decay_rate > 0.0)) {
    throw Error(ErrorCode::InvalidInput, "truncation_decay_rate must be > 0");
  }
}

namespace {

// ln(1e4): keeps the discarded tail four decades below the absolute floor.
constexpr double kTailSafety = 9.210340371976184;

VectorIntegral<1> as_vector_call(const ScalarIntegrand& f, auto&& integrate) {
  auto wrapped = [&f](double p) { return Values<1>{f(p)}; };
  return integrate(wrapped);
}

ComplexAmplitude to_amplitude(const VectorIntegral<1>& r) {
  return {r.value[0], r.abs_error[0]};
}

}  // namespace

double truncation_half_width(double decay_rate, const QuadratureSpec& spec) {
  if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
    throw Error(ErrorCode::InvalidInput, "decay_rate must be positive and finite");
  }
  const double floor = std::max(spec.absolute_floor, std::numeric_limits<double>::min());
  return (std::log(1.0 / floor) + kTailSafety) / decay_rate;
}

ComplexAmplitude integrate_line(const ScalarIntegrand& f, double decay_rate,
                                const QuadratureSpec& spec) {
  return to_amplitude(as_vector_call(f, [&](auto& g) {
    return integrate_line_values<1>(g, decay_rate, spec);
  }));
}

ComplexAmplitude integrate_periodic(const ScalarIntegrand& f, double period,
                                    const QuadratureSpec& spec) {
  return to_amplitude(as_vector_call(f, [&](auto& g) {
    return integrate_periodic_values<1>(g, period, spec);
  }));
}

ComplexAmplitude integrate_interval(const ScalarIntegrand& f, double a, double b,
                                    const QuadratureSpec& spec) {
  return to_amplitude(as_vector_call(f, [&](auto& g) {
    return integrate_interval_values<1>(g, a, b, spec);
  }));
}

ComplexAmplitude integrate_half_line(const ScalarIntegrand& f, double a,
                                     double decay_rate, const QuadratureSpec& spec) {
  const double length = truncation_half_width(decay_rate, spec);
  return to_amplitude(as_vector_call(f, [&](auto& g) {
    return integrate_interval_values<1>(g, a, a + length, spec, 16);
  }));
}

}  // namespace wavekit
