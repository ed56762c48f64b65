#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hqc/errors.hpp"
#include "hqc/types.hpp"

namespace hqc::quadrature {

inline constexpr std::size_t kPanelNodes = 16;

struct GaussLegendreRule {
  std::array<double, kPanelNodes> nodes;    // on [-1, 1]
  std::array<double, kPanelNodes> weights;
};

const GaussLegendreRule& gauss_legendre_16();

/// Breakpoints 0, 1/2, 3/4, ..., 1 - 2^-m, end: panels shrink geometrically as
/// they approach the unit circle, so a pole just outside [0, end] sits at a
/// distance comparable to the width of the nearest panel.
std::vector<double> dyadic_breakpoints(double end);

/// Composite 16-node Gauss-Legendre over the given panels, each panel split
/// into 2^level equal pieces.
template <class Scalar, class Integrand>
Scalar composite_gauss(const Integrand& f, const std::vector<double>& breakpoints, int level) {
  const auto& rule = gauss_legendre_16();
  const std::size_t pieces = std::size_t{1} << level;
  Scalar total{};
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double width = (breakpoints[i + 1] - a) / static_cast<double>(pieces);
    for (std::size_t piece = 0; piece < pieces; ++piece) {
      const double left = a + width * static_cast<double>(piece);
      const double mid = left + 0.5 * width;
      Scalar panel{};
      for (std::size_t q = 0; q < kPanelNodes; ++q) {
        panel += rule.weights[q] * f(mid + 0.5 * width * rule.nodes[q]);
      }
      total += 0.5 * width * panel;
    }
  }
  return total;
}

/// Integrates f over the panels, doubling the panel count until two
/// successive values differ by less than tol * max(scale_floor, |value|).
template <class Scalar, class Integrand>
Scalar integrate_with_doubling(const Integrand& f, const std::vector<double>& breakpoints,
                               double tol, int max_level = 10, double scale_floor = 1.0) {
  Scalar previous = composite_gauss<Scalar>(f, breakpoints, 0);
  for (int level = 1; level <= max_level; ++level) {
    const Scalar current = composite_gauss<Scalar>(f, breakpoints, level);
    if (std::abs(current - previous) <= tol * std::max(scale_floor, std::abs(current))) {
      return current;
    }
    if (level == max_level) {
      throw NonConvergenceError("panel doubling did not converge", std::abs(previous),
                                std::abs(current));
    }
    previous = current;
  }
  return previous;
}

/// Integral of an analytic integrand along the radial segment [0, z].
template <class Integrand>
Complex radial_integral(const Integrand& integrand, Complex z, double tol = 1e-12) {
  const double rho = std::abs(z);
  if (rho == 0.0) {
    return 0.0;
  }
  const Complex direction = z / rho;
  auto along = [&](double s) { return integrand(s * direction); };
  return direction * integrate_with_doubling<Complex>(along, dyadic_breakpoints(rho), tol);
}

}  // namespace hqc::quadrature
