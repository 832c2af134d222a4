#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace wavekit {
namespace detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK qk15 abscissae).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N>
struct Panel {
  double a = 0.0;
  double b = 0.0;
  Values<N> integral{};
  std::array<double, N> error{};
  double priority = 0.0;
  bool operator<(const Panel& other) const { return priority < other.priority; }
};

template <std::size_t N, class F>
Panel<N> kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Values<N>, 15> samples;
  samples[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    samples[j] = f(center - dx);
    samples[14 - j] = f(center + dx);
  }

  Panel<N> panel;
  panel.a = a;
  panel.b = b;
  for (std::size_t c = 0; c < N; ++c) {
    cplx kronrod = kKronrodWeights[7] * samples[7][c];
    cplx gauss = kGaussWeights[3] * samples[7][c];
    for (int j = 0; j < 7; ++j) {
      const cplx pair = samples[j][c] + samples[14 - j][c];
      kronrod += kKronrodWeights[j] * pair;
      if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const cplx mean = 0.5 * kronrod;
    double resasc = kKronrodWeights[7] * std::abs(samples[7][c] - mean);
    for (int j = 0; j < 7; ++j) {
      resasc += kKronrodWeights[j] *
                (std::abs(samples[j][c] - mean) + std::abs(samples[14 - j][c] - mean));
    }
    resasc *= std::abs(half);
    double err = std::abs((kronrod - gauss) * half);
    if (resasc != 0.0 && err != 0.0) {
      err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    panel.integral[c] = kronrod * half;
    panel.error[c] = err;
  }
  return panel;
}

template <std::size_t N>
bool converged(const Values<N>& total, const std::array<double, N>& error,
               const QuadratureSpec& spec) {
  for (std::size_t c = 0; c < N; ++c) {
    if (!(error[c] <= spec.relative_tolerance * std::abs(total[c]) + spec.absolute_floor)) {
      return false;
    }
  }
  return true;
}

template <std::size_t N>
double panel_priority(const Panel<N>& p, const Values<N>& total,
                      const QuadratureSpec& spec) {
  double worst = 0.0;
  for (std::size_t c = 0; c < N; ++c) {
    const double budget =
        spec.relative_tolerance * std::abs(total[c]) + spec.absolute_floor +
        std::numeric_limits<double>::min();
    worst = std::max(worst, p.error[c] / budget);
  }
  return worst;
}

/// Globally adaptive Gauss-Kronrod: repeatedly bisects the panel with the
/// largest normalized error until every component meets its tolerance.
template <std::size_t N, class F>
VectorIntegral<N> adaptive_kronrod(F&& f, double a, double b,
                                   const QuadratureSpec& spec, int initial_panels) {
  spec.validate();
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw Error(ErrorCode::InvalidInput, "integration bounds must be finite");
  }
  VectorIntegral<N> result;
  if (a == b) return result;

  const std::size_t max_panels = std::max<std::size_t>(spec.max_subdivisions / 15, 1);
  std::priority_queue<Panel<N>> queue;
  Values<N> total{};
  std::array<double, N> error{};

  const int pieces = std::max(initial_panels, 1);
  const double width = (b - a) / pieces;
  std::vector<Panel<N>> initial;
  initial.reserve(pieces);
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + k * width;
    const double hi = (k + 1 == pieces) ? b : a + (k + 1) * width;
    initial.push_back(kronrod15<N>(f, lo, hi));
    result.evaluations += 15;
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += initial.back().integral[c];
      error[c] += initial.back().error[c];
    }
  }
  for (auto& p : initial) {
    p.priority = panel_priority(p, total, spec);
    queue.push(p);
  }

  std::size_t panels = initial.size();
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() *
                           std::max(std::abs(a), std::abs(b));
  while (!converged(total, error, spec)) {
    if (panels >= max_panels) {
      throw Error(ErrorCode::NonConvergence,
                  "adaptive quadrature exhausted " + std::to_string(panels) + " panels");
    }
    Panel<N> worst = queue.top();
    if (worst.b - worst.a <= min_width) {
      throw Error(ErrorCode::NonConvergence,
                  "adaptive quadrature cannot refine below roundoff");
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel<N> left = kronrod15<N>(f, worst.a, mid);
    Panel<N> right = kronrod15<N>(f, mid, worst.b);
    result.evaluations += 30;
    for (std::size_t c = 0; c < N; ++c) {
      total[c] += left.integral[c] + right.integral[c] - worst.integral[c];
      error[c] += left.error[c] + right.error[c] - worst.error[c];
    }
    left.priority = panel_priority(left, total, spec);
    right.priority = panel_priority(right, total, spec);
    queue.push(left);
    queue.push(right);
    ++panels;
  }

  // Re-sum to shed the drift of the incremental updates.
  Values<N> sum{};
  std::array<double, N> err{};
  while (!queue.empty()) {
    const Panel<N>& p = queue.top();
    for (std::size_t c = 0; c < N; ++c) {
      sum[c] += p.integral[c];
      err[c] += p.error[c];
    }
    queue.pop();
  }
  result.value = sum;
  result.abs_error = err;
  return result;
}

}  // namespace detail

template <std::size_t N, class F>
VectorIntegral<N> integrate_interval_values(F&& f, double a, double b,
                                            const QuadratureSpec& spec,
                                            int initial_panels = 4) {
  return detail::adaptive_kronrod<N>(std::forward<F>(f), a, b, spec, initial_panels);
}

/// Line integral on [-P, P] with P from truncation_half_width. The initial
/// partition is symmetric with p = 0 as a breakpoint.
template <std::size_t N, class F>
VectorIntegral<N> integrate_line_values(F&& f, double decay_rate,
                                        const QuadratureSpec& spec) {
  const double half_width = truncation_half_width(decay_rate, spec);
  return detail::adaptive_kronrod<N>(std::forward<F>(f), -half_width, half_width,
                                     spec, 32);
}

/// Equally spaced rule over [center - period/2, center + period/2), doubled
/// until two successive refinements agree to tolerance.
template <std::size_t N, class F>
VectorIntegral<N> integrate_periodic_values(F&& f, double period,
                                            const QuadratureSpec& spec,
                                            double center = 0.0) {
  spec.validate();
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorCode::InvalidInput, "period must be positive");
  }
  const double start = center - 0.5 * period;
  std::size_t n = 16;
  Values<N> sum{};
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = f(start + period * static_cast<double>(k) / n);
    for (std::size_t c = 0; c < N; ++c) sum[c] += v[c];
  }
  VectorIntegral<N> result;
  result.evaluations = n;
  auto estimate = [&](std::size_t points) {
    Values<N> t;
    for (std::size_t c = 0; c < N; ++c) t[c] = sum[c] * (period / points);
    return t;
  };

  Values<N> previous = estimate(n);
  int agreements = 0;
  while (true) {
    if (2 * n > spec.max_subdivisions) {
      throw Error(ErrorCode::NonConvergence,
                  "periodic quadrature exceeded " + std::to_string(spec.max_subdivisions) +
                      " points");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto v = f(start + period * (static_cast<double>(k) + 0.5) / n);
      for (std::size_t c = 0; c < N; ++c) sum[c] += v[c];
    }
    result.evaluations += n;
    n *= 2;
    const Values<N> current = estimate(n);
    std::array<double, N> diff{};
    for (std::size_t c = 0; c < N; ++c) diff[c] = std::abs(current[c] - previous[c]);
    agreements = detail::converged(current, diff, spec) ? agreements + 1 : 0;
    previous = current;
    result.abs_error = diff;
    if (agreements >= 2) break;
  }
  result.value = previous;
  return result;
}

}  // namespace wavekit
