#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace wavekit::detail {

template <int Order>
struct GaussLegendreRule {
  std::array<double, Order> nodes{};
  std::array<double, Order> weights{};

  GaussLegendreRule() {
    for (int i = 0; i < Order; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (Order + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= Order; ++k) {
          const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = pk;
        }
        dp = Order * (x * p1 - p0) / (x * x - 1.0);
        const double step = p1 / dp;
        x -= step;
        if (std::abs(step) < 1e-16) break;
      }
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }

  static const GaussLegendreRule& instance() {
    static const GaussLegendreRule rule;
    return rule;
  }
};

/// Composite Gauss-Legendre sum of f over [a, b] split into equal panels.
template <int Order, class F>
auto composite_gauss_legendre(F&& f, double a, double b, int panels) {
  const auto& rule = GaussLegendreRule<Order>::instance();
  const double width = (b - a) / panels;
  decltype(f(a)) sum{};
  for (int k = 0; k < panels; ++k) {
    const double center = a + (k + 0.5) * width;
    for (int i = 0; i < Order; ++i) {
      sum += (0.5 * width * rule.weights[i]) * f(center + 0.5 * width * rule.nodes[i]);
    }
  }
  return sum;
}

}  // namespace wavekit::detail
