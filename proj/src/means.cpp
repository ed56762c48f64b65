#include "hqc/means.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "hqc/catalog.hpp"
#include "hqc/csv.hpp"
#include "hqc/errors.hpp"
#include "hqc/quadrature.hpp"

namespace hqc {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_radius(double r) {
  if (!(r >= 0.0 && r <= kMaxRadius)) {
    throw DomainError("radius must lie in [0, 1 - 2^-20]");
  }
}

void require_exponent(double p) {
  if (!(p > 0.0) || std::isinf(p)) {
    throw DomainError("integral means need 0 < p < infinity");
  }
}

// Neumaier-compensated mean of |F|^p over the first n samples.
double power_mean(std::span<const double> moduli, std::size_t n, double p) {
  double sum = 0.0;
  double compensation = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double term = p == 1.0 ? moduli[j] : p == 2.0 ? moduli[j] * moduli[j]
                                                        : std::pow(moduli[j], p);
    const double t = sum + term;
    compensation += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  const double mean = (sum + compensation) / static_cast<double>(n);
  return p == 1.0 ? mean : std::pow(mean, 1.0 / p);
}

ComplexMap as_map(const AnalyticFunction& f) {
  return [f](Complex z) { return f.value(z); };
}

ComplexMap as_map(const HarmonicMap& f) {
  return [f](Complex z) { return f.value(z); };
}

}  // namespace

CircleModuli::CircleModuli(ComplexMap f, double r) : f_(std::move(f)), radius_(r) {
  require_radius(r);
}

void CircleModuli::refine_to(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw DomainError("circle grid size must be a power of two");
  }
  if (moduli_.empty()) {
    moduli_.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      moduli_.push_back(std::abs(f_(std::polar(radius_, kTwoPi * j / n))));
    }
    return;
  }
  while (moduli_.size() < n) {
    const std::size_t m = moduli_.size();
    moduli_.reserve(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
      const double theta = kTwoPi * (2.0 * i + 1.0) / (2.0 * m);
      moduli_.push_back(std::abs(f_(std::polar(radius_, theta))));
    }
  }
}

MeansEstimate integral_means_estimate(CircleModuli& samples, double p, const MeansOptions& opts) {
  require_exponent(p);
  std::size_t n = opts.min_points;
  samples.refine_to(n);
  double previous = power_mean(samples.moduli(), n, p);
  MeansEstimate estimate{previous, previous, 0.0, n, false};
  while (2 * n <= opts.max_points) {
    n *= 2;
    samples.refine_to(n);
    const double current = power_mean(samples.moduli(), n, p);
    const double change = std::abs(current - previous);
    estimate = {current, previous, current == 0.0 ? 0.0 : change / std::abs(current), n,
                change <= opts.rel_tol * std::abs(current)};
    if (estimate.converged) break;
    previous = current;
  }
  return estimate;
}

double integral_means(CircleModuli& samples, double p, const MeansOptions& opts) {
  const MeansEstimate estimate = integral_means_estimate(samples, p, opts);
  if (!estimate.converged) {
    throw NonConvergenceError("integral means did not converge at r = " +
                                  std::to_string(samples.radius()),
                              estimate.previous, estimate.value);
  }
  return estimate.value;
}

double integral_means(const ComplexMap& f, double p, double r, const MeansOptions& opts) {
  require_exponent(p);
  CircleModuli samples(f, r);
  return integral_means(samples, p, opts);
}

double integral_means(const AnalyticFunction& f, double p, double r, const MeansOptions& opts) {
  return integral_means(as_map(f), p, r, opts);
}

double integral_means(const HarmonicMap& f, double p, double r, const MeansOptions& opts) {
  return integral_means(as_map(f), p, r, opts);
}

double sup_mean(const ComplexMap& f, double r) {
  require_radius(r);
  constexpr std::size_t n = std::size_t{1} << 12;
  constexpr double cell = kTwoPi / n;
  auto modulus = [&](double theta) { return std::abs(f(std::polar(r, theta))); };
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double v = modulus(cell * j);
    if (v > best_value) {
      best_value = v;
      best = j;
    }
  }
  // Golden-section search for the maximum on the two cells around the best node.
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = cell * (static_cast<double>(best) - 1.0);
  double b = cell * (static_cast<double>(best) + 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = modulus(c);
  double fd = modulus(d);
  while (b - a > 1e-10) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = modulus(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = modulus(d);
    }
  }
  return std::max({best_value, fc, fd});
}

double sup_mean(const AnalyticFunction& f, double r) { return sup_mean(as_map(f), r); }
double sup_mean(const HarmonicMap& f, double r) { return sup_mean(as_map(f), r); }

const char* to_string(Extremal e) { return e == Extremal::H ? "H" : "scrH"; }

AnalyticFunction extremal_h(Extremal e, double k) {
  return catalog(e == Extremal::H ? "H" : "scrH", k);
}

AnalyticFunction extremal_g(Extremal e, double k) {
  return catalog(e == Extremal::H ? "G" : "scrG", k);
}

double corollary_bound(double k, double p, double r, Extremal e) {
  if (!(p >= 1.0) || std::isinf(p)) {
    throw DomainError("corollary bound requires p >= 1 (Minkowski step)");
  }
  require_radius(r);
  if (r == 0.0) {
    return 0.0;
  }
  const AnalyticFunction extremal = extremal_h(e, k);
  const ComplexMap f = as_map(extremal);
  auto integrand = [&](double s) { return integral_means(f, p, s); };
  const double integral = quadrature::integrate_with_doubling<double>(
      integrand, quadrature::dyadic_breakpoints(r), 1e-8, 8, 0.0);
  return (1.0 + k) * integral;
}

double lemmaF_integral(double p, double r) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw DomainError("integral of |1 - r e^{it}|^-p needs p > 1");
  }
  require_radius(r);
  const AnalyticFunction cauchy = catalog("cauchy");
  MeansOptions opts;
  opts.max_points = std::size_t{1} << 23;
  return kTwoPi * std::pow(integral_means(cauchy, p, r, opts), p);
}

double lemmaF_ratio(double p, double r) {
  return lemmaF_integral(p, r) * std::pow(1.0 - r, p - 1.0);
}

HardyNormEstimate hardy_norm_bound(const AnalyticFunction& dh, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("hardy_norm_bound needs 0 < p < 1");
  }
  MeansOptions opts;
  opts.max_points = std::size_t{1} << 23;
  const ComplexMap f = as_map(dh);
  auto mean_pp = [&](double r) { return std::pow(integral_means(f, p, r, opts), p); };

  // With t = -log2(1 - r): dr = ln 2 (1 - r) dt, one Gauss panel per unit of t.
  constexpr int kCutoffExponent = 16;
  const auto& rule = quadrature::gauss_legendre_16();
  HardyNormEstimate estimate;
  for (int panel = 0; panel < kCutoffExponent; ++panel) {
    double sum = 0.0;
    for (std::size_t q = 0; q < quadrature::kPanelNodes; ++q) {
      const double t = panel + 0.5 + 0.5 * rule.nodes[q];
      const double one_minus_r = std::exp2(-t);
      sum += rule.weights[q] * std::pow(one_minus_r, p) * mean_pp(1.0 - one_minus_r);
    }
    estimate.truncated_integral += 0.5 * std::log(2.0) * sum;
  }

  // Least-squares slope of log integrand against log(1 - r) over j = 11..16.
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int j = kCutoffExponent - 5; j <= kCutoffExponent; ++j) {
    const double one_minus_r = std::exp2(-j);
    const double integrand = std::pow(one_minus_r, p - 1.0) * mean_pp(1.0 - one_minus_r);
    const double x = std::log(one_minus_r);
    const double y = std::log(integrand);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  estimate.tail_exponent = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  estimate.divergent = estimate.tail_exponent <= -0.98;
  return estimate;
}

HardyNormEstimate hardy_norm_bound(const HarmonicMap& f, double p) {
  return hardy_norm_bound(f.dh(), p);
}

double envelope_ratio(double k, double p, double r, Extremal e) {
  if (!(p > 1.0) || std::isinf(p)) {
    throw DomainError("envelope ratio needs p > 1");
  }
  const double exponent = (e == Extremal::H ? 2.0 : 3.0) - 1.0 / p;
  MeansOptions opts;
  opts.max_points = std::size_t{1} << 23;
  return integral_means(extremal_h(e, k), p, r, opts) * (1.0 - k) * std::pow(1.0 - r, exponent);
}

MeansCurve means_curve(const ComplexMap& f, std::string target_id, double p,
                       std::span<const double> radii, const MeansOptions& opts) {
  MeansCurve curve{std::move(target_id), p, {}, {}};
  for (double r : radii) {
    curve.radii.push_back(r);
    curve.values.push_back(integral_means(f, p, r, opts));
  }
  return curve;
}

std::vector<double> dyadic_radii(int depth) {
  std::vector<double> radii;
  for (int j = 1; j <= depth; ++j) {
    radii.push_back(1.0 - std::exp2(-j));
  }
  return radii;
}

void write_means_csv(std::ostream& out, std::span<const MeansCurve> curves) {
  out << "target_id,p,r,value\n";
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.radii.size(); ++i) {
      out << csv::join({c.target_id, csv::format_double(c.p), csv::format_double(c.radii[i]),
                        csv::format_double(c.values[i])})
          << '\n';
    }
  }
}

std::vector<MeansCurve> read_means_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || csv::split(line) != std::vector<std::string>{"target_id", "p",
                                                                             "r", "value"}) {
    throw PreconditionError("means CSV header must be target_id,p,r,value");
  }
  std::vector<MeansCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 4) {
      throw PreconditionError("means CSV row needs 4 fields: " + line);
    }
    const double p = csv::parse_double(fields[1]);
    if (curves.empty() || curves.back().target_id != fields[0] || curves.back().p != p) {
      curves.push_back({fields[0], p, {}, {}});
    }
    curves.back().radii.push_back(csv::parse_double(fields[2]));
    curves.back().values.push_back(csv::parse_double(fields[3]));
  }
  return curves;
}

}  // namespace hqc
