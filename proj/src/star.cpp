#include "hqc/star.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>

#include "hqc/csv.hpp"
#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr double kZeroGuard = 1e-8;
constexpr double kRadiusNudge = 1e-7;
constexpr int kMaxNudges = 3;

bool same_grid(const SampledCircle& a, const SampledCircle& b) {
  return a.values.size() == b.values.size();
}

}  // namespace

double StarFunction::value_at(double theta) const {
  if (thetas.empty()) {
    throw PreconditionError("empty star function");
  }
  if (theta <= thetas.front()) return values.front();
  if (theta >= thetas.back()) return values.back();
  const double step = thetas[1] - thetas[0];
  const auto m = std::min(static_cast<std::size_t>(theta / step), thetas.size() - 2);
  const double frac = (theta - thetas[m]) / step;
  return values[m] + frac * (values[m + 1] - values[m]);
}

SampledCircle sample_log_modulus(const AnalyticFunction& f, double r, std::size_t n) {
  return sample_log_modulus([f](Complex z) { return f.value(z); }, f.id(), r, n);
}

SampledCircle sample_log_modulus(const ComplexMap& f, std::string source_id, double r,
                                 std::size_t n) {
  if (!(r > 0.0 && r <= kMaxRadius)) {
    throw DomainError("sampling radius must lie in (0, 1 - 2^-20]");
  }
  if (n < 2) {
    throw DomainError("need at least two samples");
  }
  SampledCircle s{r, std::vector<double>(n), std::move(source_id)};
  for (int attempt = 0; attempt <= kMaxNudges; ++attempt) {
    bool clean = true;
    for (std::size_t j = 0; j < n && clean; ++j) {
      const double theta = -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(n);
      const double modulus = std::abs(f(std::polar(s.radius, theta)));
      if (!(modulus >= kZeroGuard) || !std::isfinite(modulus)) {
        clean = false;
      } else {
        s.values[j] = std::log(modulus);
      }
    }
    if (clean) return s;
    s.radius = s.radius + kRadiusNudge <= kMaxRadius ? s.radius + kRadiusNudge
                                                     : s.radius - kRadiusNudge;
  }
  throw ZeroOnGridError("log-modulus of " + s.source_id + " hits a zero near r = " +
                        std::to_string(r));
}

StarFunction star_function(std::span<const double> samples, std::string source_id,
                           double radius) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw DomainError("star function needs at least two samples");
  }
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double cell = kTwoPi / static_cast<double>(n);
  StarFunction star;
  star.source_id = std::move(source_id);
  star.radius = radius;
  star.thetas.resize(n + 1);
  star.values.resize(n + 1);
  double running = 0.0;
  double compensation = 0.0;
  star.values[0] = 0.0;
  for (std::size_t m = 0; m <= n; ++m) {
    star.thetas[m] = kPi * static_cast<double>(m) / static_cast<double>(n);
    if (m == 0) continue;
    const double x = sorted[m - 1];
    const double t = running + x;
    compensation += std::abs(running) >= std::abs(x) ? (running - t) + x : (x - t) + running;
    running = t;
    star.values[m] = cell * (running + compensation);
  }
  return star;
}

StarFunction star_function(const SampledCircle& s) {
  return star_function(s.values, s.source_id, s.radius);
}

StarVerdict star_dominates(const StarFunction& a, const StarFunction& b, double tol) {
  if (a.values.size() != b.values.size() || a.thetas != b.thetas) {
    throw GridMismatchError("star functions live on different theta grids");
  }
  StarVerdict verdict;
  verdict.max_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < a.values.size(); ++m) {
    const double excess = a.values[m] - b.values[m];
    if (excess > verdict.max_violation) {
      verdict.max_violation = excess;
      verdict.argmax = m;
    }
  }
  verdict.theta = a.thetas[verdict.argmax];
  verdict.holds = verdict.max_violation <= tol;
  return verdict;
}

PhiMeansVerdict phi_means_dominates(const SampledCircle& a, const SampledCircle& b,
                                    std::span<const double> p_grid,
                                    std::span<const double> t_grid, double tol) {
  if (!same_grid(a, b)) {
    throw GridMismatchError("sampled circles have different sizes");
  }
  const double n = static_cast<double>(a.values.size());
  const double top = std::max(*std::max_element(a.values.begin(), a.values.end()),
                              *std::max_element(b.values.begin(), b.values.end()));
  PhiMeansVerdict verdict;
  verdict.max_violation = -std::numeric_limits<double>::infinity();
  auto record = [&](double excess, std::string label) {
    if (excess > verdict.max_violation) {
      verdict.max_violation = excess;
      verdict.worst = std::move(label);
    }
  };
  for (double p : p_grid) {
    if (!(p > 0.0)) {
      throw DomainError("exponential family needs p > 0");
    }
    const double shift = p * top;
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      sa += std::exp(p * a.values[j] - shift);
      sb += std::exp(p * b.values[j] - shift);
    }
    // Shifted means are only known up to e^{shift}, so compare relatively.
    record((sa - sb) / std::max(sb, 1e-300), "exp:p=" + csv::format_double(p));
  }
  for (double t : t_grid) {
    double sa = 0.0, sb = 0.0;
    for (std::size_t j = 0; j < a.values.size(); ++j) {
      sa += std::max(a.values[j] - t, 0.0);
      sb += std::max(b.values[j] - t, 0.0);
    }
    record((sa - sb) / n, "hinge:t=" + csv::format_double(t));
  }
  verdict.holds = verdict.max_violation <= tol;
  return verdict;
}

std::vector<double> hinge_levels(const SampledCircle& a, const SampledCircle& b,
                                 std::size_t count) {
  const auto [amin, amax] = std::minmax_element(a.values.begin(), a.values.end());
  const auto [bmin, bmax] = std::minmax_element(b.values.begin(), b.values.end());
  const double lo = std::min(*amin, *bmin);
  const double hi = std::max(*amax, *bmax);
  std::vector<double> levels;
  for (std::size_t i = 0; i < count; ++i) {
    levels.push_back(count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) /
                                                static_cast<double>(count - 1));
  }
  return levels;
}

void write_star_csv(std::ostream& out, std::span<const StarFunction> stars) {
  out << "theta,value,source_id,radius\n";
  for (const auto& s : stars) {
    for (std::size_t m = 0; m < s.values.size(); ++m) {
      out << csv::join({csv::format_double(s.thetas[m]), csv::format_double(s.values[m]),
                        s.source_id, csv::format_double(s.radius)})
          << '\n';
    }
  }
}

std::vector<StarFunction> read_star_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) ||
      csv::split(line) != std::vector<std::string>{"theta", "value", "source_id", "radius"}) {
    throw PreconditionError("star CSV header must be theta,value,source_id,radius");
  }
  std::vector<StarFunction> stars;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = csv::split(line);
    if (fields.size() != 4) {
      throw PreconditionError("star CSV row needs 4 fields: " + line);
    }
    const double theta = csv::parse_double(fields[0]);
    const double radius = csv::parse_double(fields[3]);
    if (stars.empty() || theta == 0.0 || stars.back().source_id != fields[2] ||
        stars.back().radius != radius) {
      stars.push_back({{}, {}, fields[2], radius});
    }
    stars.back().thetas.push_back(theta);
    stars.back().values.push_back(csv::parse_double(fields[1]));
  }
  return stars;
}

}  // namespace hqc
