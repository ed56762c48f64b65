#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hqc/analytic_function.hpp"
#include "hqc/types.hpp"

namespace hqc {

/// Samples of a real functional on theta_j = -pi + 2 pi j / n, j = 0..n-1.
struct SampledCircle {
  double radius = 0.0;
  std::vector<double> values;
  std::string source_id;
};

/// g*(theta) on theta_m = m pi / n, m = 0..n, for n source samples.
struct StarFunction {
  std::vector<double> thetas;
  std::vector<double> values;
  std::string source_id;
  double radius = 0.0;

  /// Linear interpolation between grid points, i.e. the marginal cell counted
  /// proportionally.
  double value_at(double theta) const;
};

/// log|F(r e^{i theta_j})|. A node closer than 1e-8 to a zero (or a
/// non-finite value) moves the circle by 1e-7, at most three times.
SampledCircle sample_log_modulus(const AnalyticFunction& f, double r, std::size_t n = 4096);
SampledCircle sample_log_modulus(const ComplexMap& f, std::string source_id, double r,
                                 std::size_t n = 4096);

/// Cumulative sum of the decreasing rearrangement: values[m] is (2 pi / n)
/// times the sum of the m largest samples.
StarFunction star_function(std::span<const double> samples, std::string source_id = {},
                           double radius = 0.0);
StarFunction star_function(const SampledCircle& s);

struct StarVerdict {
  bool holds = true;
  double max_violation = 0.0;  // max of a - b over the grid (may be negative)
  std::size_t argmax = 0;
  double theta = 0.0;
};

/// a <= b + tol at every grid point.
StarVerdict star_dominates(const StarFunction& a, const StarFunction& b, double tol);

struct PhiMeansVerdict {
  bool holds = true;
  double max_violation = 0.0;  // worst excess: relative for exp, absolute for hinge
  std::string worst;           // "exp:p=<p>" or "hinge:t=<t>"
};

/// Mean of Phi(a) <= mean of Phi(b) (1 + tol) for Phi(x) = e^{px}, p in
/// p_grid, and mean of Phi(a) <= mean of Phi(b) + tol for Phi(x) =
/// max(x - t, 0), t in t_grid. Exponentials are shifted by p max(a, b)
/// before evaluation.
PhiMeansVerdict phi_means_dominates(const SampledCircle& a, const SampledCircle& b,
                                    std::span<const double> p_grid,
                                    std::span<const double> t_grid, double tol = 1e-9);

/// `count` hinge levels spread evenly over the joint range of a and b.
std::vector<double> hinge_levels(const SampledCircle& a, const SampledCircle& b,
                                 std::size_t count = 16);

/// CSV with header theta,value,source_id,radius.
void write_star_csv(std::ostream& out, std::span<const StarFunction> stars);
std::vector<StarFunction> read_star_csv(std::istream& in);

}  // namespace hqc
