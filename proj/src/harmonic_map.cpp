#include "hqc/harmonic_map.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "hqc/errors.hpp"

namespace hqc {

namespace {

constexpr std::array<std::pair<MapClass, std::string_view>, 5> kClassNames{{
    {MapClass::convex, "convex"},
    {MapClass::close_to_convex, "close-to-convex"},
    {MapClass::starlike, "starlike"},
    {MapClass::convex_in_one_direction, "convex-in-one-direction"},
    {MapClass::analytic, "analytic"},
}};

constexpr double kOriginTol = 1e-12;

}  // namespace

std::string_view to_string(MapClass c) {
  for (const auto& [value, name] : kClassNames) {
    if (value == c) {
      return name;
    }
  }
  return "unknown";
}

MapClass map_class_from_string(std::string_view name) {
  for (const auto& [value, n] : kClassNames) {
    if (n == name) {
      return value;
    }
  }
  throw UnknownNameError("unknown class tag: " + std::string(name));
}

ClassTags::ClassTags(std::initializer_list<MapClass> classes) {
  for (MapClass c : classes) {
    insert(c);
  }
}

bool ClassTags::close_to_convex_family() const {
  return has(MapClass::close_to_convex) || has(MapClass::starlike) ||
         has(MapClass::convex_in_one_direction) || has(MapClass::convex);
}

std::vector<std::string> ClassTags::names() const {
  std::vector<std::string> out;
  for (const auto& [value, name] : kClassNames) {
    if (has(value)) {
      out.emplace_back(name);
    }
  }
  return out;
}

ClassTags ClassTags::from_names(const std::vector<std::string>& names) {
  ClassTags tags;
  for (const auto& n : names) {
    tags.insert(map_class_from_string(n));
  }
  return tags;
}

HarmonicMap::HarmonicMap(std::string id, AnalyticFunction h, AnalyticFunction g, ClassTags tags,
                         std::optional<double> qc_k, PartsEvaluator parts)
    : id_(std::move(id)),
      h_(std::move(h)),
      g_(std::move(g)),
      tags_(tags),
      qc_k_(qc_k),
      parts_(std::move(parts)) {
  if (qc_k_ && !(*qc_k_ >= 0.0 && *qc_k_ < 1.0)) {
    throw DomainError("qc_k must lie in [0, 1)");
  }
}

std::pair<Complex, Complex> HarmonicMap::parts(Complex z) const {
  if (parts_) {
    if (!(std::abs(z) < 1.0)) {
      throw DomainError("evaluation point outside the open unit disk");
    }
    return parts_(z);
  }
  return {h_.value(z), g_.value(z)};
}

Complex HarmonicMap::value(Complex z) const {
  const auto [h, g] = parts(z);
  return h + std::conj(g);
}

AnalyticFunction HarmonicMap::dilatation() const {
  const AnalyticFunction dh = this->dh();
  const AnalyticFunction dg = this->dg();
  AnalyticFunction::SeriesGenerator series;
  if (dh.has_series() && dg.has_series()) {
    series = [dh, dg](std::size_t n) {
      return series::divide(dg.taylor_coefficients(n), dh.taylor_coefficients(n), n);
    };
  }
  return AnalyticFunction::closed_form(
      id_ + ".omega", [dh, dg](Complex z) { return dg.value(z) / dh.value(z); },
      [dh, dg](Complex z) {
        const Complex a = dh.value(z);
        return (dg.derivative(z) * a - dg.value(z) * dh.derivative(z)) / (a * a);
      },
      std::move(series));
}

HarmonicMap HarmonicMap::with_tags(ClassTags tags) const {
  HarmonicMap copy = *this;
  copy.tags_ = tags;
  return copy;
}

HarmonicMap HarmonicMap::with_qc_k(std::optional<double> qc_k) const {
  return HarmonicMap(id_, h_, g_, tags_, qc_k, parts_);
}

HarmonicMap HarmonicMap::with_id(std::string id) const {
  HarmonicMap copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

Complex eval_harmonic(const HarmonicMap& f, Complex z) { return f.value(z); }

double jacobian(const HarmonicMap& f, Complex z) {
  return std::norm(f.h().derivative(z)) - std::norm(f.g().derivative(z));
}

Complex analytic_dilatation(const HarmonicMap& f, Complex z) {
  const Complex dh = f.h().derivative(z);
  if (std::abs(dh) < 1e-300) {
    throw SingularityError("h' vanishes at the evaluation point");
  }
  return f.g().derivative(z) / dh;
}

double k_of_K(double K) {
  if (!(K >= 1.0) || std::isinf(K)) {
    throw DomainError("K must be a finite number >= 1");
  }
  return (K - 1.0) / (K + 1.0);
}

double K_of_k(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw DomainError("k must lie in [0, 1)");
  }
  return (1.0 + k) / (1.0 - k);
}

double boundary_sup_modulus(const AnalyticFunction& f) {
  constexpr std::size_t n = 1u << 12;
  double best = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    best = std::max(best, std::abs(f.value(std::polar(kMaxRadius, kTwoPi * j / n))));
  }
  return best;
}

HarmonicMap make_shear(std::string id, const AnalyticFunction& phi,
                       const AnalyticFunction& omega) {
  if (std::abs(phi.value(0.0)) > kOriginTol || std::abs(phi.derivative(0.0) - 1.0) > kOriginTol) {
    throw PreconditionError("shear needs phi(0) = 0 and phi'(0) = 1");
  }
  if (std::abs(omega.value(0.0)) > kOriginTol) {
    throw PreconditionError("shear needs omega(0) = 0");
  }
  const double sup_omega = boundary_sup_modulus(omega);
  if (!(sup_omega < 1.0)) {
    throw PreconditionError("shear needs sup |omega| < 1");
  }

  const AnalyticFunction dphi = phi.derivative_function();
  AnalyticFunction::SeriesGenerator integrand_series;
  if (phi.has_series() && omega.has_series()) {
    integrand_series = [dphi, omega](std::size_t n) {
      auto denominator = series::scale(omega.taylor_coefficients(n), -1.0);
      denominator[0] += 1.0;
      return series::divide(dphi.taylor_coefficients(n), denominator, n);
    };
  }
  auto integrand = AnalyticFunction::closed_form(
      id + ".h'",
      [dphi, omega](Complex z) { return dphi.value(z) / (1.0 - omega.value(z)); },
      [dphi, omega](Complex z) {
        const Complex q = 1.0 - omega.value(z);
        return (dphi.derivative(z) * q + dphi.value(z) * omega.derivative(z)) / (q * q);
      },
      std::move(integrand_series));

  auto h = AnalyticFunction::radial_path_integral(id + ".h", integrand);
  auto g = AnalyticFunction::linear_combination(id + ".g", h, 1.0, phi, -1.0);
  HarmonicMap::PartsEvaluator parts = [h, phi](Complex z) {
    const Complex hz = h.value(z);
    return std::pair<Complex, Complex>{hz, hz - phi.value(z)};
  };
  return HarmonicMap(std::move(id), std::move(h), std::move(g),
                     ClassTags{MapClass::close_to_convex, MapClass::convex_in_one_direction},
                     sup_omega, std::move(parts));
}

HarmonicMap normalize_to_S0(const HarmonicMap& f) {
  if (std::abs(f.h().value(0.0)) > kOriginTol || std::abs(f.g().value(0.0)) > kOriginTol ||
      std::abs(f.h().derivative(0.0) - 1.0) > kOriginTol) {
    throw PreconditionError("normalize_to_S0 needs h(0) = g(0) = 0 and h'(0) = 1");
  }
  const Complex alpha = f.g().derivative(0.0);
  const double a = std::abs(alpha);
  if (!(a < 1.0)) {
    throw PreconditionError("normalize_to_S0 needs |g'(0)| < 1 (sense-preserving at 0)");
  }
  const double denom = 1.0 - a * a;
  if (a == 0.0) {
    return f;
  }
  auto h0 = AnalyticFunction::linear_combination(f.id() + ".h0", f.h(), 1.0 / denom, f.g(),
                                                 -std::conj(alpha) / denom);
  auto g0 = AnalyticFunction::linear_combination(f.id() + ".g0", f.g(), 1.0 / denom, f.h(),
                                                 -alpha / denom);
  // omega0 = (omega - alpha) / (1 - conj(alpha) omega), a disk automorphism of omega.
  std::optional<double> k0;
  if (f.qc_k()) {
    k0 = (*f.qc_k() + a) / (1.0 + *f.qc_k() * a);
  }
  HarmonicMap::PartsEvaluator parts = [f, alpha, denom](Complex z) {
    const auto [h, g] = f.parts(z);
    return std::pair<Complex, Complex>{(h - std::conj(alpha) * g) / denom,
                                       (g - alpha * h) / denom};
  };
  return HarmonicMap(f.id() + ".S0", std::move(h0), std::move(g0), f.tags(), k0,
                     std::move(parts));
}

}  // namespace hqc
