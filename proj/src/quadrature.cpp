#include "hqc/quadrature.hpp"

#include <cmath>

namespace hqc::quadrature {

namespace {

GaussLegendreRule compute_rule() {
  // Newton iteration on P_16 from the Chebyshev-like initial guesses.
  GaussLegendreRule rule{};
  constexpr int n = static_cast<int>(kPanelNodes);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) {
        break;
      }
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_16() {
  static const GaussLegendreRule rule = compute_rule();
  return rule;
}

std::vector<double> dyadic_breakpoints(double end) {
  std::vector<double> points{0.0};
  for (double b = 0.5; b < end; b = 0.5 * (1.0 + b)) {
    points.push_back(b);
  }
  points.push_back(end);
  return points;
}

}  // namespace hqc::quadrature
