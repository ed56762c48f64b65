#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hqc/catalog.hpp"
#include "hqc/errors.hpp"
#include "hqc/harmonic_map.hpp"
#include "oracles.hpp"

namespace {

using hqc::AnalyticFunction;
using hqc::Complex;
using hqc::HarmonicMap;

AnalyticFunction linear(std::string id, Complex c) {
  return AnalyticFunction::closed_form(
      std::move(id), [c](Complex z) { return c * z; }, [c](Complex) { return c; });
}

HarmonicMap identity_map() {
  return HarmonicMap("identity", hqc::catalog("identity"), AnalyticFunction::constant("0", 0.0),
                     {hqc::MapClass::analytic}, 0.0);
}

std::vector<Complex> random_points(std::size_t count, double max_modulus, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.0, max_modulus);
  std::uniform_real_distribution<double> angle(0.0, hqc::kTwoPi);
  std::vector<Complex> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::polar(radius(rng), angle(rng)));
  return out;
}

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(EvalHarmonic, ConjugatePartCancels) {
  HarmonicMap f("zz", hqc::catalog("identity"), hqc::catalog("identity"), {}, std::nullopt);
  for (double y : {0.5, 0.999, -0.3}) {
    EXPECT_NEAR(std::abs(hqc::eval_harmonic(f, Complex(0, y))), 0.0, 1e-15);
  }
  EXPECT_THROW(hqc::eval_harmonic(f, Complex(0, 1)), hqc::DomainError);
}

TEST(EvalHarmonic, HarmonicKoebeAtHalf) {
  auto f = hqc::harmonic_koebe();
  EXPECT_NEAR(f.h()(0.5).real(), 19.0 / 6.0, 1e-12);
  EXPECT_NEAR(f.g()(0.5).real(), 7.0 / 6.0, 1e-12);
  EXPECT_NEAR(hqc::eval_harmonic(f, 0.5).real(), 13.0 / 3.0, 1e-12);
}

TEST(EvalHarmonic, HarmonicKoebeMatchesSeries) {
  auto f = hqc::harmonic_koebe();
  // Independent expansion: h' = (1+z)/(1-z)^4, g' = z h'.
  const std::size_t n = 400;
  auto dh = oracle::cauchy_product(oracle::poly({1.0, 1.0}, n),
                                   oracle::cauchy_product(
                                       oracle::cauchy_product(oracle::geometric(1.0, n),
                                                              oracle::geometric(1.0, n), n),
                                       oracle::cauchy_product(oracle::geometric(1.0, n),
                                                              oracle::geometric(1.0, n), n),
                                       n),
                                   n);
  for (Complex z : random_points(16, 0.6, 7)) {
    Complex h = 0.0, g = 0.0, zp = z;
    for (std::size_t m = 0; m + 1 < n; ++m) {
      h += dh[m] / static_cast<double>(m + 1) * zp;
      if (m >= 1) g += dh[m - 1] / static_cast<double>(m + 1) * zp;
      zp *= z;
    }
    EXPECT_LT(rel_err(f.h()(z), h), 1e-11);
    EXPECT_LT(rel_err(f.g()(z), g), 1e-11);
  }
}

TEST(EvalHarmonic, IdentityAndDomain) {
  auto f = identity_map();
  EXPECT_EQ(hqc::eval_harmonic(f, Complex(0.3, -0.4)), Complex(0.3, -0.4));
  EXPECT_THROW(hqc::eval_harmonic(f, 1.0), hqc::DomainError);
  EXPECT_THROW(hqc::eval_harmonic(f, Complex(0.8, 0.8)), hqc::DomainError);
}

TEST(Jacobian, Examples) {
  EXPECT_DOUBLE_EQ(hqc::jacobian(identity_map(), Complex(0.2, 0.7)), 1.0);
  auto s = hqc::make_shear("s", hqc::catalog("identity"), linear("w", 0.5));
  EXPECT_NEAR(hqc::jacobian(s, 0.5), 16.0 / 9.0 * 15.0 / 16.0, 1e-10);
  EXPECT_NEAR(hqc::jacobian(hqc::harmonic_koebe(), 0.0), 1.0, 1e-15);
  EXPECT_THROW(hqc::jacobian(s, 1.0), hqc::DomainError);
}

TEST(Dilatation, Examples) {
  EXPECT_EQ(hqc::analytic_dilatation(identity_map(), Complex(0.1, 0.5)), Complex(0.0));
  for (double k : {0.25, 0.5, 0.8}) {
    auto s = hqc::make_shear("s", hqc::catalog("half-plane"), linear("w", k));
    for (Complex z : random_points(8, 0.9, 3)) {
      EXPECT_LT(std::abs(hqc::analytic_dilatation(s, z) - k * z), 1e-10);
    }
  }
  EXPECT_NEAR(std::abs(hqc::analytic_dilatation(hqc::harmonic_koebe(), 0.3) - 0.3), 0.0, 1e-14);
}

TEST(Dilatation, SingularWhenHPrimeVanishes) {
  auto sq = AnalyticFunction::closed_form(
      "sq", [](Complex z) { return z * z; }, [](Complex z) { return 2.0 * z; });
  HarmonicMap f("sq", sq, AnalyticFunction::constant("0", 0.0), {}, std::nullopt);
  EXPECT_THROW(hqc::analytic_dilatation(f, 0.0), hqc::SingularityError);
}

TEST(QcConstant, Examples) {
  EXPECT_DOUBLE_EQ(hqc::k_of_K(1.0), 0.0);
  EXPECT_DOUBLE_EQ(hqc::k_of_K(3.0), 0.5);
  EXPECT_NEAR(hqc::k_of_K(2.0), 1.0 / 3.0, 1e-16);
  EXPECT_THROW(hqc::k_of_K(0.5), hqc::DomainError);
  EXPECT_THROW(hqc::K_of_k(1.0), hqc::DomainError);
  EXPECT_THROW(hqc::K_of_k(-0.1), hqc::DomainError);
}

TEST(QcConstant, RoundTrip) {
  for (double K : {1.0, 1.5, 2.0, 3.0, 10.0}) {
    EXPECT_NEAR(hqc::K_of_k(hqc::k_of_K(K)), K, 1e-12 * K);
  }
}

TEST(Catalog, Examples) {
  for (double k : {0.0, 0.3, 0.9}) {
    EXPECT_EQ(hqc::catalog("H", k)(0.0), Complex(1.0));
    EXPECT_EQ(hqc::catalog("G", k)(0.0), Complex(0.0));
  }
  EXPECT_NEAR(hqc::catalog("scrH", 0.5)(0.5).real(), 24.0, 1e-12);
  EXPECT_THROW(hqc::catalog("nope"), hqc::UnknownNameError);
  EXPECT_THROW(hqc::catalog("H", 1.0), hqc::DomainError);
}

TEST(Catalog, Algebra) {
  for (double k : {0.0, 0.3, 0.7}) {
    auto H = hqc::catalog("H", k), G = hqc::catalog("G", k);
    auto sH = hqc::catalog("scrH", k), sG = hqc::catalog("scrG", k);
    for (Complex z : random_points(64, 0.95, 11)) {
      EXPECT_LT(std::abs(G(z) - k * z * H(z)), 1e-12 * std::abs(G(z)) + 1e-300);
      EXPECT_LT(std::abs(sG(z) - k * z * sH(z)), 1e-12 * std::abs(sG(z)) + 1e-300);
      const Complex lhs = sH(z) * (1.0 - z), rhs = H(z) * (1.0 + z);
      EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(rhs));
    }
  }
}

TEST(Catalog, DerivativesMatchDifferenceQuotients) {
  for (const auto& name : hqc::catalog_names()) {
    auto F = hqc::catalog(name, 0.4);
    for (Complex z : random_points(8, 0.8, 5)) {
      const double h = 1e-5;
      const Complex fd = (F(z + h) - F(z - h)) / (2.0 * h);
      EXPECT_LT(rel_err(F.derivative(z), fd), 1e-7) << name;
    }
  }
}

TEST(Shear, Examples) {
  auto trivial = hqc::make_shear("t", hqc::catalog("identity"), linear("w", 0.0));
  for (Complex z : random_points(8, 0.9, 1)) {
    EXPECT_LT(std::abs(trivial.h()(z) - z), 1e-14);
    EXPECT_LT(std::abs(trivial.g()(z)), 1e-14);
  }
  auto s = hqc::make_shear("s", hqc::catalog("identity"), linear("w", 0.5));
  EXPECT_NEAR(s.h()(0.5).real(), -2.0 * std::log(0.75), 1e-12);
  EXPECT_NEAR(s.g()(0.5).real(), -2.0 * std::log(0.75) - 0.5, 1e-12);
  auto hp = hqc::make_shear("hp", hqc::catalog("half-plane"), linear("w", 0.5));
  EXPECT_NEAR(hp.h().derivative(0.5).real(), 1.0 / (0.25 * 0.75), 1e-10);
  EXPECT_TRUE(s.tags().has(hqc::MapClass::convex_in_one_direction));
  EXPECT_TRUE(s.tags().has(hqc::MapClass::close_to_convex));
  ASSERT_TRUE(s.qc_k());
  EXPECT_NEAR(*s.qc_k(), 0.5, 1e-6);
}

TEST(Shear, Preconditions) {
  auto shifted = AnalyticFunction::closed_form(
      "shifted", [](Complex z) { return z + 0.1; }, [](Complex) { return Complex(1.0); });
  EXPECT_THROW(hqc::make_shear("a", shifted, linear("w", 0.5)), hqc::PreconditionError);
  auto w_shifted = AnalyticFunction::closed_form(
      "w", [](Complex z) { return 0.5 * z + 0.1; }, [](Complex) { return Complex(0.5); });
  EXPECT_THROW(hqc::make_shear("b", hqc::catalog("identity"), w_shifted),
               hqc::PreconditionError);
  EXPECT_THROW(hqc::make_shear("c", hqc::catalog("identity"), linear("w", 1.2)),
               hqc::PreconditionError);
}

TEST(Shear, IdentitiesAtRandomPoints) {
  auto sq = AnalyticFunction::closed_form(
      "w2", [](Complex z) { return 0.8 * z * z; }, [](Complex z) { return 1.6 * z; });
  for (const char* phi : {"identity", "half-plane", "strip"}) {
    for (const auto& w : {linear("w", 0.25), linear("w", 0.8), sq}) {
      auto Phi = hqc::catalog(phi);
      auto s = hqc::make_shear("s", Phi, w);
      for (Complex z : random_points(64, 0.95, 42)) {
        EXPECT_LT(std::abs(s.h()(z) - s.g()(z) - Phi(z)), 1e-9) << phi << " " << z;
        EXPECT_LT(std::abs(s.g().derivative(z) - w(z) * s.h().derivative(z)), 1e-9);
      }
    }
  }
}

TEST(Normalize, Examples) {
  auto f = identity_map();
  auto f0 = hqc::normalize_to_S0(f);
  for (Complex z : random_points(8, 0.9, 2)) {
    EXPECT_LT(std::abs(f0.h()(z) - z), 1e-15);
    EXPECT_LT(std::abs(f0.g()(z)), 1e-15);
  }
  HarmonicMap half("half", hqc::catalog("identity"), linear("g", 0.5), {}, std::nullopt);
  auto half0 = hqc::normalize_to_S0(half);
  for (Complex z : random_points(8, 0.9, 3)) {
    EXPECT_LT(std::abs(half0.h()(z) - z), 1e-15);
    EXPECT_LT(std::abs(half0.g()(z)), 1e-15);
  }
  HarmonicMap bad("bad", hqc::catalog("identity"), linear("g", 1.0), {}, std::nullopt);
  EXPECT_THROW(hqc::normalize_to_S0(bad), hqc::PreconditionError);
}

TEST(Normalize, OutputIsNormalized) {
  auto g = AnalyticFunction::closed_form(
      "g", [](Complex z) { return Complex(0.3, 0.1) * z + 0.2 * z * z; },
      [](Complex z) { return Complex(0.3, 0.1) + 0.4 * z; });
  std::vector<HarmonicMap> maps{HarmonicMap("poly", hqc::catalog("identity"), g, {}, std::nullopt)};
  for (const auto& m : hqc::build_corpus(hqc::builtin_corpus_entries())) maps.push_back(m);
  for (const auto& f : maps) {
    auto f0 = hqc::normalize_to_S0(f);
    EXPECT_LT(std::abs(f0.h()(0.0)), 1e-12) << f.id();
    EXPECT_LT(std::abs(f0.g()(0.0)), 1e-12) << f.id();
    EXPECT_LT(std::abs(f0.h().derivative(0.0) - 1.0), 1e-12) << f.id();
    EXPECT_LT(std::abs(f0.g().derivative(0.0)), 1e-12) << f.id();
  }
}

TEST(Taylor, Examples) {
  auto id = hqc::catalog("identity").taylor_coefficients(5);
  EXPECT_EQ(id[0], Complex(0.0));
  EXPECT_EQ(id[1], Complex(1.0));
  for (std::size_t n = 2; n < 5; ++n) EXPECT_EQ(id[n], Complex(0.0));
  auto h0 = hqc::catalog("H", 0.0).taylor_coefficients(256);
  for (std::size_t n = 0; n < h0.size(); ++n) {
    EXPECT_NEAR(h0[n].real(), 2.0 * n + 1.0, 1e-12 * (2.0 * n + 1.0));
  }
  auto g = hqc::catalog("G", 0.3).taylor_coefficients(4);
  EXPECT_EQ(g[0], Complex(0.0));
  EXPECT_NEAR(g[1].real(), 0.3, 1e-15);
  EXPECT_THROW(hqc::catalog("H", 0.0).taylor_coefficients(0), hqc::DomainError);
}

TEST(Taylor, ExtremalsMatchCauchyProductOracle) {
  const std::size_t n = 256;
  for (double k : {0.0, 0.3, 0.7}) {
    const std::vector<std::pair<std::string, oracle::Seq>> cases{
        {"H", oracle::extremal_coefficients(1, 2, k, false, n)},
        {"G", oracle::extremal_coefficients(1, 2, k, true, n)},
        {"scrH", oracle::extremal_coefficients(2, 3, k, false, n)},
        {"scrG", oracle::extremal_coefficients(2, 3, k, true, n)}};
    for (const auto& [name, expected] : cases) {
      auto got = hqc::catalog(name, k).taylor_coefficients(n);
      for (std::size_t m = 0; m < n; ++m) {
        EXPECT_LE(std::abs(got[m] - expected[m]), 1e-12 * std::max(1.0, std::abs(expected[m])))
            << name << " k=" << k << " n=" << m;
      }
    }
  }
}

TEST(Taylor, ExtremalCoefficientsPositive) {
  for (double k : {0.0, 0.3, 0.7}) {
    for (const char* name : {"H", "scrH"}) {
      auto a = hqc::catalog(name, k).taylor_coefficients(129);
      for (const auto& c : a) {
        EXPECT_EQ(c.imag(), 0.0);
        EXPECT_GT(c.real(), 0.0);
      }
    }
  }
}

TEST(Taylor, ShearSeriesAgreesWithValues) {
  auto s = hqc::make_shear("s", hqc::catalog("half-plane"), linear("w", 0.5));
  EXPECT_THROW(s.h().taylor_coefficients(8), hqc::NonConvergenceError);
  auto a = hqc::resample_series(s.h(), 0.8, 1024, 0.99).taylor_coefficients(256);
  for (Complex z : random_points(8, 0.5, 9)) {
    Complex sum = 0.0, zp = 1.0;
    for (const auto& c : a) {
      sum += c * zp;
      zp *= z;
    }
    EXPECT_LT(rel_err(sum, s.h()(z)), 1e-12);
  }
}

TEST(Taylor, PathIntegralWithoutSeriesDoesNotConverge) {
  auto integrand = AnalyticFunction::closed_form(
      "exp", [](Complex z) { return std::exp(z); }, [](Complex z) { return std::exp(z); });
  auto F = AnalyticFunction::radial_path_integral("F", integrand);
  EXPECT_NEAR(std::abs(F(Complex(0.3, 0.4)) - (std::exp(Complex(0.3, 0.4)) - 1.0)), 0.0, 1e-13);
  EXPECT_THROW(F.taylor_coefficients(8), hqc::NonConvergenceError);
  auto resampled = hqc::resample_series(F, 0.5, 128, 0.99);
  auto a = resampled.taylor_coefficients(8);
  double factorial = 1.0;
  for (std::size_t m = 1; m < 8; ++m) {
    factorial *= static_cast<double>(m);
    EXPECT_NEAR(std::abs(a[m] - 1.0 / factorial), 0.0, 1e-12);
  }
}

TEST(PowerSeries, TruncationAndTail) {
  const double radius = 0.9;
  auto F = AnalyticFunction::power_series(
      "geo", [](std::size_t n) { return oracle::geometric(0.99, n); }, radius);
  const std::size_t N = F.truncation();
  EXPECT_GE(N, 64u);
  EXPECT_LE(N, 4096u);
  EXPECT_LT(std::pow(0.99, N) * std::pow(radius, N), 1e-12);
  EXPECT_NEAR(std::abs(F(0.9) - 1.0 / (1.0 - 0.99 * 0.9)), 0.0, 1e-10);
  EXPECT_THROW(F(0.95), hqc::DomainError);
}

TEST(Corpus, BuiltinMembersAreNormalizedAndCertified) {
  auto entries = hqc::builtin_corpus_entries();
  EXPECT_GE(entries.size(), 10u);
  auto maps = hqc::build_corpus(entries);
  for (const auto& f : maps) {
    EXPECT_LT(std::abs(f.h()(0.0)), 1e-15) << f.id();
    EXPECT_LT(std::abs(f.g()(0.0)), 1e-15) << f.id();
    for (Complex z : random_points(32, hqc::kMaxRadius, 4)) {
      EXPECT_TRUE(std::isfinite(std::abs(f.h()(z))));
      EXPECT_TRUE(std::isfinite(std::abs(f.h().derivative(z))));
    }
  }
}

TEST(Corpus, ManifestRoundTrip) {
  auto entries = hqc::builtin_corpus_entries();
  auto text = hqc::corpus_manifest(entries).dump();
  auto back = hqc::parse_corpus_manifest(nlohmann::json::parse(text));
  ASSERT_EQ(back.size(), entries.size());
  EXPECT_EQ(hqc::corpus_manifest(back).dump(), text);
  auto bad = nlohmann::json::parse(R"([{"id":"x","kind":"analytic","colour":1}])");
  EXPECT_THROW(hqc::parse_corpus_manifest(bad), hqc::Error);
  auto overclaimed = nlohmann::json::parse(
      R"([{"id":"x","kind":"shear","parameters":{"phi":"identity","omega_coefficient":0.5},
           "class_tags":["close-to-convex"],"qc_k":0.25}])");
  EXPECT_THROW(hqc::build_mapping(hqc::parse_corpus_manifest(overclaimed)[0]),
               hqc::PreconditionError);
}

TEST(Corpus, ShearSpecGrammar) {
  auto e = hqc::parse_shear_spec("phi=halfplane,omega=0.5z");
  EXPECT_EQ(e.kind, "shear");
  auto f = hqc::build_mapping(e);
  EXPECT_NEAR(std::abs(hqc::analytic_dilatation(f, 0.4) - 0.2), 0.0, 1e-10);
  auto e2 = hqc::parse_shear_spec("phi=strip,omega=0.25z2");
  auto f2 = hqc::build_mapping(e2);
  EXPECT_NEAR(std::abs(hqc::analytic_dilatation(f2, 0.4) - 0.04), 0.0, 1e-10);
  EXPECT_THROW(hqc::parse_shear_spec("phi=halfplane"), hqc::PreconditionError);
  EXPECT_THROW(hqc::parse_shear_spec("phi=halfplane,omega=0.5q"), hqc::PreconditionError);
}
