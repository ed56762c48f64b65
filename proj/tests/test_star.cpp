#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "hqc/catalog.hpp"
#include "hqc/errors.hpp"
#include "hqc/star.hpp"
#include "oracles.hpp"

namespace {

using hqc::Complex;
using hqc::ComplexMap;

constexpr double kPi = std::numbers::pi;

std::vector<double> grid_samples(std::size_t n, const std::function<double(double)>& g) {
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = g(-kPi + 2.0 * kPi * j / n);
  return out;
}

hqc::SampledCircle log_modulus(const ComplexMap& f, double r, std::size_t n = 4096) {
  return hqc::sample_log_modulus(f, "f", r, n);
}

ComplexMap herglotz() {
  return [](Complex z) { return (1.0 + z) / (1.0 - z); };
}

// cos(beta) (1 + u z) / (1 - u z) + i sin(beta): positive real part, value e^{i beta} at 0.
ComplexMap positive_real_part(double beta, Complex u) {
  return [beta, u](Complex z) {
    return std::cos(beta) * (1.0 + u * z) / (1.0 - u * z) + Complex(0.0, std::sin(beta));
  };
}

std::vector<ComplexMap> lemma_d_functions() {
  const Complex i(0.0, 1.0);
  std::vector<ComplexMap> out{
      positive_real_part(0.0, 1.0),
      // Equality case; rotated by a whole number of grid cells (n = 4096).
      positive_real_part(0.0, std::exp(i * kPi / 4.0)),
      positive_real_part(0.0, 0.5),
      positive_real_part(0.5, 1.0),
      positive_real_part(-1.0, std::exp(2.0 * i)),
      positive_real_part(1.3, 0.8 * std::exp(-i)),
      positive_real_part(-0.4, 0.3 * i),
  };
  // A pure rotation factor leaves |p| unchanged.
  out.push_back([](Complex z) { return std::polar(1.0, 1.0) * (1.0 + z) / (1.0 - z); });
  return out;
}

std::vector<std::pair<ComplexMap, ComplexMap>> subordination_pairs() {
  const double u = 0.5;
  ComplexMap F = [](Complex z) { return 1.0 / (1.0 - z); };
  ComplexMap sq = [F](Complex z) { return F(z * z); };
  ComplexMap blaschke = [F, u](Complex z) { return F(z * (z + u) / (1.0 + u * z)); };
  return {{sq, F}, {blaschke, F}};
}

void expect_star_dominates(const hqc::SampledCircle& a, const hqc::SampledCircle& b, double tol,
                           const std::string& label) {
  auto verdict = hqc::star_dominates(hqc::star_function(a), hqc::star_function(b), tol);
  EXPECT_TRUE(verdict.holds) << label << " violation " << verdict.max_violation << " at theta "
                             << verdict.theta;
}

}  // namespace

TEST(SampleLogModulus, Examples) {
  auto one = hqc::sample_log_modulus(hqc::AnalyticFunction::constant("one", 1.0), 0.5);
  EXPECT_EQ(one.values.size(), 4096u);
  for (double v : one.values) EXPECT_EQ(v, 0.0);
  auto id = hqc::sample_log_modulus(hqc::catalog("identity"), 0.5, 512);
  for (double v : id.values) EXPECT_NEAR(v, std::log(0.5), 1e-15);
  auto c = hqc::sample_log_modulus(hqc::catalog("cauchy"), 0.5, 512);
  // theta_j = -pi + 2 pi j / n, so theta = 0 is j = n / 2.
  EXPECT_NEAR(c.values[256], std::log(2.0), 1e-15);
  EXPECT_NEAR(c.values[256], 0.693147, 1e-6);
}

TEST(SampleLogModulus, ZeroOnGrid) {
  auto shifted = log_modulus([](Complex z) { return z - 0.5; }, 0.5, 512);
  EXPECT_NE(shifted.radius, 0.5);
  EXPECT_NEAR(shifted.radius, 0.5, 4e-7);
  for (double v : shifted.values) EXPECT_TRUE(std::isfinite(v));
  EXPECT_THROW(log_modulus([](Complex) { return Complex(0.0); }, 0.5, 512), hqc::ZeroOnGridError);
  EXPECT_THROW(log_modulus([](Complex z) { return z; }, 1.0, 512), hqc::DomainError);
}

TEST(StarFunction, Examples) {
  const std::size_t n = 4096;
  auto ones = hqc::star_function(std::vector<double>(n, 1.0));
  ASSERT_EQ(ones.thetas.size(), n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    EXPECT_NEAR(ones.values[m], 2.0 * ones.thetas[m], 1e-12);
  }
  auto cosine = hqc::star_function(grid_samples(n, [](double x) { return std::cos(x); }));
  for (std::size_t m = 0; m <= n; ++m) {
    EXPECT_NEAR(cosine.values[m], 2.0 * std::sin(cosine.thetas[m]), 1e-5);
  }
  auto indicator = grid_samples(n, [](double x) { return std::abs(x) <= kPi / 2 ? 1.0 : 0.0; });
  auto star = hqc::star_function(indicator);
  for (std::size_t m = 0; m <= n; m += 37) {
    EXPECT_NEAR(star.values[m], std::min(2.0 * star.thetas[m], kPi), 2.0 * kPi / n + 1e-12);
  }
}

TEST(StarFunction, EndpointsAndConcavity) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<double> x(1024);
  for (auto& v : x) v = normal(rng);
  auto star = hqc::star_function(x);
  EXPECT_EQ(star.values.front(), 0.0);
  double total = 0.0;
  for (double v : x) total += v;
  EXPECT_NEAR(star.values.back(), 2.0 * kPi / x.size() * total, 1e-9);
  double scale = 0.0;
  for (double v : star.values) scale = std::max(scale, std::abs(v));
  for (std::size_t m = 1; m + 1 < star.values.size(); ++m) {
    EXPECT_LE(star.values[m + 1] - 2.0 * star.values[m] + star.values[m - 1], 1e-9 * scale);
  }
}

TEST(StarFunction, ValueAtInterpolates) {
  auto star = hqc::star_function(std::vector<double>{3.0, 1.0, 2.0, 0.0});
  EXPECT_DOUBLE_EQ(star.value_at(0.0), 0.0);
  EXPECT_NEAR(star.value_at(kPi / 4), kPi / 2 * 3.0, 1e-14);
  EXPECT_NEAR(star.value_at(kPi / 8), kPi / 4 * 3.0, 1e-14);
  EXPECT_NEAR(star.value_at(kPi), kPi / 2 * 6.0, 1e-14);
}

TEST(StarFunction, MatchesBruteForceSubsets) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> size(2, 12);
  std::normal_distribution<double> normal(0.0, 2.0);
  for (int instance = 0; instance < 100; ++instance) {
    std::vector<double> x(size(rng));
    for (auto& v : x) v = normal(rng);
    auto star = hqc::star_function(x);
    const double cell = 2.0 * kPi / x.size();
    for (std::size_t m = 0; m <= x.size(); ++m) {
      EXPECT_NEAR(star.values[m], cell * oracle::best_subset_sum(x, m), 1e-12)
          << "instance " << instance << " m " << m;
    }
  }
}

TEST(StarFunction, TranslationRule) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> normal;
  std::vector<double> x(2048);
  for (auto& v : x) v = normal(rng);
  auto base = hqc::star_function(x);
  for (double c : {1.0, -1.0}) {
    std::vector<double> shifted(x);
    for (auto& v : shifted) v += c;
    auto star = hqc::star_function(shifted);
    for (std::size_t m = 0; m < star.values.size(); ++m) {
      EXPECT_NEAR(star.values[m], base.values[m] + 2.0 * base.thetas[m] * c, 1e-9);
    }
  }
}

TEST(StarFunction, RotationInvariance) {
  auto s = log_modulus([](Complex z) { return 1.0 / (1.0 - z); }, 0.9);
  auto base = hqc::star_function(s.values);
  for (std::size_t shift : {1u, 17u, 1000u, 4095u}) {
    std::vector<double> rotated(s.values);
    std::rotate(rotated.begin(), rotated.begin() + shift, rotated.end());
    EXPECT_EQ(hqc::star_function(rotated).values, base.values) << shift;
  }
}

TEST(StarFunction, Subadditivity) {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> skew(-3.0, 3.0);
  for (int pair = 0; pair < 200; ++pair) {
    std::vector<double> a(512), b(512), sum(512);
    const double t = skew(rng);
    for (std::size_t j = 0; j < a.size(); ++j) {
      a[j] = normal(rng);
      b[j] = t * a[j] + normal(rng);
      sum[j] = a[j] + b[j];
    }
    auto sa = hqc::star_function(a), sb = hqc::star_function(b), ss = hqc::star_function(sum);
    for (std::size_t m = 0; m < ss.values.size(); ++m) {
      EXPECT_LE(ss.values[m], sa.values[m] + sb.values[m] + 1e-9);
    }
  }
}

TEST(StarFunction, SubadditivityEqualityForSymmetricDecreasing) {
  for (auto [u, v] : {std::pair{0.5, 0.8}, std::pair{0.3, 0.95}}) {
    auto a = grid_samples(4096, [u](double x) { return std::log(std::abs(1.0 + std::polar(u, x))); });
    auto b = grid_samples(4096, [v](double x) { return std::log(std::abs(1.0 + std::polar(v, x))); });
    std::vector<double> sum(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) sum[j] = a[j] + b[j];
    auto sa = hqc::star_function(a), sb = hqc::star_function(b), ss = hqc::star_function(sum);
    for (std::size_t m = 0; m < ss.values.size(); ++m) {
      EXPECT_NEAR(ss.values[m], sa.values[m] + sb.values[m], 1e-9);
    }
  }
}

TEST(StarFunction, PositiveRealPartBoundedByHerglotz) {
  for (double r : {0.3, 0.6, 0.9}) {
    auto reference = log_modulus(herglotz(), r);
    int index = 0;
    for (const auto& p : lemma_d_functions()) {
      expect_star_dominates(log_modulus(p, r), reference, 1e-8,
                            "p#" + std::to_string(index++) + " r=" + std::to_string(r));
    }
  }
}

TEST(StarFunction, Subordination) {
  for (double r : {0.3, 0.6, 0.9}) {
    int index = 0;
    for (const auto& [composed, outer] : subordination_pairs()) {
      expect_star_dominates(log_modulus(composed, r), log_modulus(outer, r), 1e-8,
                            "pair#" + std::to_string(index++) + " r=" + std::to_string(r));
    }
  }
}

TEST(StarDominates, Examples) {
  const std::size_t n = 4096;
  auto cosine = hqc::star_function(grid_samples(n, [](double x) { return std::cos(x); }));
  auto ones = hqc::star_function(std::vector<double>(n, 1.0));
  EXPECT_TRUE(hqc::star_dominates(cosine, cosine, 0.0).holds);
  EXPECT_TRUE(hqc::star_dominates(cosine, ones, 1e-9).holds);
  auto reverse = hqc::star_dominates(ones, cosine, 1e-9);
  EXPECT_FALSE(reverse.holds);
  EXPECT_GT(reverse.max_violation, 0.0);
  EXPECT_GT(reverse.theta, 0.0);
  EXPECT_NEAR(reverse.theta, reverse.argmax * kPi / n, 1e-15);
  auto coarse = hqc::star_function(std::vector<double>(512, 1.0));
  EXPECT_THROW(hqc::star_dominates(coarse, ones, 1e-9), hqc::GridMismatchError);
}

TEST(PhiMeans, Examples) {
  const std::vector<double> ps{0.5, 1.0, 2.0, 4.0};
  auto b = log_modulus(herglotz(), 0.5);
  EXPECT_TRUE(hqc::phi_means_dominates(b, b, ps, hqc::hinge_levels(b, b)).holds);
  hqc::SampledCircle zero{0.5, std::vector<double>(b.values.size(), 0.0), "zero"};
  EXPECT_TRUE(hqc::phi_means_dominates(zero, b, ps, hqc::hinge_levels(zero, b)).holds);
  hqc::SampledCircle one{0.5, std::vector<double>(b.values.size(), 1.0), "one"};
  auto v = hqc::phi_means_dominates(one, zero, ps, hqc::hinge_levels(one, zero));
  EXPECT_FALSE(v.holds);
  EXPECT_GT(v.max_violation, 0.0);
  EXPECT_FALSE(v.worst.empty());
  const std::vector<double> bad{0.0};
  EXPECT_THROW(hqc::phi_means_dominates(one, zero, bad, {}), hqc::DomainError);
  hqc::SampledCircle short_one{0.5, std::vector<double>(16, 1.0), "s"};
  EXPECT_THROW(hqc::phi_means_dominates(short_one, zero, ps, {}), hqc::GridMismatchError);
}

TEST(PhiMeans, LargeExponentsDoNotOverflow) {
  hqc::SampledCircle a{0.5, std::vector<double>(512, 300.0), "a"};
  hqc::SampledCircle b{0.5, std::vector<double>(512, 301.0), "b"};
  const std::vector<double> ps{4.0};
  auto v = hqc::phi_means_dominates(a, b, ps, {});
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(std::isfinite(v.max_violation));
  EXPECT_FALSE(hqc::phi_means_dominates(b, a, ps, {}).holds);
}

TEST(PhiMeans, HingeComparedAbsolutely) {
  // a tops b by 1e-12 in one cell: the hinge just below a's maximum sees
  // mean 0 on b and a tiny positive mean on a.
  hqc::SampledCircle b{0.5, std::vector<double>(512, 0.0), "b"};
  for (std::size_t j = 0; j < 256; ++j) b.values[j] = 1.0;
  hqc::SampledCircle a = b;
  a.values[0] = 1.0 + 1e-12;
  const std::vector<double> t{1.0 + 5e-13}, none{};
  auto v = hqc::phi_means_dominates(a, b, none, t, 1e-9);
  EXPECT_TRUE(v.holds);
  EXPECT_NEAR(v.max_violation, 5e-13 / 512, 1e-3 * 5e-13 / 512);
  EXPECT_FALSE(hqc::phi_means_dominates(a, b, none, t, 0.0).holds);
}

TEST(PhiMeans, StarDominationImpliesPhiMeans) {
  std::vector<std::pair<hqc::SampledCircle, hqc::SampledCircle>> pairs;
  for (double r : {0.3, 0.6, 0.9}) {
    auto reference = log_modulus(herglotz(), r);
    for (const auto& p : lemma_d_functions()) pairs.emplace_back(log_modulus(p, r), reference);
    for (const auto& [a, b] : subordination_pairs()) {
      pairs.emplace_back(log_modulus(a, r), log_modulus(b, r));
    }
    for (const char* name : {"koebe-derivative", "half-plane", "strip", "cauchy"}) {
      auto F = hqc::catalog(name);
      auto H = hqc::catalog("H", 0.5);
      pairs.emplace_back(log_modulus([F](Complex z) { return F.derivative(z); }, r),
                         log_modulus([H](Complex z) { return H(z); }, r));
    }
  }
  const std::vector<double> ps{0.25, 0.5, 1.0, 2.0, 4.0};
  int checked = 0;
  for (const auto& [a, b] : pairs) {
    if (!hqc::star_dominates(hqc::star_function(a), hqc::star_function(b), 1e-9).holds) continue;
    ++checked;
    auto v = hqc::phi_means_dominates(a, b, ps, hqc::hinge_levels(a, b));
    EXPECT_TRUE(v.holds) << v.worst << " " << v.max_violation;
  }
  EXPECT_GE(checked, 20);
}

TEST(StarCsv, RoundTrip) {
  std::vector<hqc::StarFunction> stars{
      hqc::star_function(log_modulus(herglotz(), 0.5, 512)),
      hqc::star_function(std::vector<double>{1.0, -2.0, 0.5, 0.25}, "small", 0.25)};
  std::stringstream buffer;
  hqc::write_star_csv(buffer, stars);
  EXPECT_EQ(buffer.str().substr(0, buffer.str().find('\n')), "theta,value,source_id,radius");
  auto back = hqc::read_star_csv(buffer);
  ASSERT_EQ(back.size(), stars.size());
  for (std::size_t i = 0; i < stars.size(); ++i) {
    EXPECT_EQ(back[i].thetas, stars[i].thetas);
    EXPECT_EQ(back[i].values, stars[i].values);
    EXPECT_EQ(back[i].source_id, stars[i].source_id);
    EXPECT_EQ(back[i].radius, stars[i].radius);
  }
}
