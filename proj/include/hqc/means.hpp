#pragma once

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hqc/analytic_function.hpp"
#include "hqc/harmonic_map.hpp"
#include "hqc/types.hpp"

namespace hqc {

struct MeansOptions {
  double rel_tol = 1e-9;
  std::size_t min_points = std::size_t{1} << 9;
  std::size_t max_points = std::size_t{1} << 20;
};

/// |F| on the uniform grid theta_j = 2 pi j / n of the circle |z| = r. Refining
/// from n to 2n only evaluates the n new midpoints; the first n stored values
/// are always exactly the n-point grid.
class CircleModuli {
 public:
  CircleModuli(ComplexMap f, double r);

  double radius() const { return radius_; }
  std::size_t size() const { return moduli_.size(); }
  void refine_to(std::size_t n);
  std::span<const double> moduli() const { return moduli_; }

 private:
  ComplexMap f_;
  double radius_;
  std::vector<double> moduli_;
};

struct MeansEstimate {
  double value = 0.0;
  double previous = 0.0;    // iterate on half as many points
  double rel_change = 0.0;  // |last - previous| / |last| at the final doubling
  std::size_t points = 0;
  bool converged = false;
};

/// Trapezoid doubling as integral_means, but returns the final iterate with
/// its last relative change instead of throwing at opts.max_points.
MeansEstimate integral_means_estimate(CircleModuli& samples, double p,
                                      const MeansOptions& opts = {});

/// Integral mean M_p(r) by the periodic trapezoid rule, doubling the grid
/// until two successive values agree to opts.rel_tol. Refines `samples` in
/// place so repeated calls at other p reuse the evaluations.
double integral_means(CircleModuli& samples, double p, const MeansOptions& opts = {});

double integral_means(const ComplexMap& f, double p, double r, const MeansOptions& opts = {});
double integral_means(const AnalyticFunction& f, double p, double r,
                      const MeansOptions& opts = {});
double integral_means(const HarmonicMap& f, double p, double r, const MeansOptions& opts = {});

/// M_inf(r) = max |F| on |z| = r: grid max over 2^12 angles, then
/// golden-section search on the best cell.
double sup_mean(const ComplexMap& f, double r);
double sup_mean(const AnalyticFunction& f, double r);
double sup_mean(const HarmonicMap& f, double r);

enum class Extremal { H, scrH };

const char* to_string(Extremal e);
/// H_k or scrH_k.
AnalyticFunction extremal_h(Extremal e, double k);
/// G_k or scrG_k.
AnalyticFunction extremal_g(Extremal e, double k);

/// (1 + k) times the integral over [0, r] of M_p(s, H_k) (or scrH_k) ds.
/// Requires p >= 1.
double corollary_bound(double k, double p, double r, Extremal e = Extremal::H);

/// Integral over [0, 2 pi] of |1 - r e^{i theta}|^{-p}, p > 1 (no 1/(2 pi)).
double lemmaF_integral(double p, double r);
/// lemmaF_integral(p, r) * (1 - r)^(p - 1).
double lemmaF_ratio(double p, double r);

struct HardyNormEstimate {
  double truncated_integral = 0.0;  // up to r = 1 - 2^-16, constant C = 1
  double tail_exponent = 0.0;       // slope of log integrand vs log(1 - r)
  bool divergent = false;

  double value() const {
    return divergent ? std::numeric_limits<double>::infinity() : truncated_integral;
  }
};

/// Integral over [0, 1 - 2^-16] of (1 - r)^(p-1) M_p^p(r, dh) dr for
/// 0 < p < 1, with the tail classified by a log-log exponent fit over
/// r = 1 - 2^-j, j = 11..16. Divergent when the exponent is <= -0.98.
HardyNormEstimate hardy_norm_bound(const AnalyticFunction& dh, double p);
HardyNormEstimate hardy_norm_bound(const HarmonicMap& f, double p);

/// M_p(r, H_k) (1 - k) (1 - r)^(2 - 1/p), or with scrH_k and exponent 3 - 1/p.
double envelope_ratio(double k, double p, double r, Extremal e = Extremal::H);

struct MeansCurve {
  std::string target_id;
  double p = 0.0;
  std::vector<double> radii;
  std::vector<double> values;
};

MeansCurve means_curve(const ComplexMap& f, std::string target_id, double p,
                       std::span<const double> radii, const MeansOptions& opts = {});

/// Radii 1 - 2^-j for j = 1..depth.
std::vector<double> dyadic_radii(int depth);

/// CSV with header target_id,p,r,value.
void write_means_csv(std::ostream& out, std::span<const MeansCurve> curves);
std::vector<MeansCurve> read_means_csv(std::istream& in);

}  // namespace hqc
