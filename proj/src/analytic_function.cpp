#include "hqc/analytic_function.hpp"

#include <cmath>
#include <utility>

#include "hqc/errors.hpp"
#include "hqc/quadrature.hpp"

namespace hqc {

namespace {

constexpr std::size_t kMinTruncation = 64;
constexpr std::size_t kMaxTruncation = 4096;
constexpr double kTailBound = 1e-12;
constexpr std::size_t kCauchyNodes = 64;

void require_in_disk(Complex z) {
  if (!(std::norm(z) < 1.0)) {
    throw DomainError("evaluation point outside the open unit disk");
  }
}

int generality(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::closed_form:
      return 0;
    case FunctionKind::power_series:
      return 1;
    case FunctionKind::radial_path_integral:
      return 2;
  }
  return 0;
}

// F'' from F' by the Cauchy integral on a circle of radius (1 - |z|) / 2.
Complex cauchy_derivative(const ComplexMap& f, Complex z) {
  const double rho = 0.5 * (1.0 - std::abs(z));
  Complex acc{};
  for (std::size_t j = 0; j < kCauchyNodes; ++j) {
    const Complex u = std::polar(1.0, kTwoPi * static_cast<double>(j) / kCauchyNodes);
    acc += f(z + rho * u) / u;
  }
  return acc / (rho * static_cast<double>(kCauchyNodes));
}

}  // namespace

const char* to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::closed_form:
      return "rational-closed-form";
    case FunctionKind::power_series:
      return "power-series";
    case FunctionKind::radial_path_integral:
      return "radial-path-integral";
  }
  return "unknown";
}

struct AnalyticFunction::Impl {
  std::string id;
  FunctionKind kind = FunctionKind::closed_form;
  ComplexMap value;
  ComplexMap derivative;
  ComplexMap second_derivative;
  SeriesGenerator series;
  double max_radius = 1.0;  // series kind only
  std::size_t truncation = 0;
  // Path-integral kind: the integrand, kept so taylor coefficients can be
  // derived from its series.
  std::shared_ptr<const Impl> integrand;
};

AnalyticFunction::AnalyticFunction(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

AnalyticFunction AnalyticFunction::closed_form(std::string id, ComplexMap value,
                                               ComplexMap derivative, SeriesGenerator series,
                                               ComplexMap second_derivative) {
  auto impl = std::make_shared<Impl>();
  impl->id = std::move(id);
  impl->kind = FunctionKind::closed_form;
  impl->value = std::move(value);
  impl->derivative = std::move(derivative);
  impl->series = std::move(series);
  impl->second_derivative = std::move(second_derivative);
  return AnalyticFunction(std::move(impl));
}

AnalyticFunction AnalyticFunction::power_series(std::string id,
                                                const SeriesGenerator& coefficients,
                                                double max_radius) {
  if (!(max_radius > 0.0 && max_radius < 1.0)) {
    throw DomainError("power series radius must lie in (0, 1)");
  }
  // The tail test looks at the last few coefficients so that a single
  // vanishing term (odd or even functions) does not end the search early.
  auto tail = [max_radius](const series::Coefficients& a) {
    double worst = 0.0;
    const std::size_t n = a.size();
    for (std::size_t m = n - 4; m < n; ++m) {
      worst = std::max(worst, std::abs(a[m]) * std::pow(max_radius, static_cast<double>(m)));
    }
    return worst;
  };
  std::size_t n = kMinTruncation;
  series::Coefficients a = coefficients(n);
  while (tail(a) >= kTailBound) {
    if (n >= kMaxTruncation) {
      throw NonConvergenceError("power series tail bound not met at truncation cap", 0.0,
                                tail(a));
    }
    n *= 2;
    a = coefficients(n);
  }
  auto shared = std::make_shared<const series::Coefficients>(std::move(a));
  auto impl = std::make_shared<Impl>();
  impl->id = std::move(id);
  impl->kind = FunctionKind::power_series;
  impl->max_radius = max_radius;
  impl->truncation = n;
  impl->value = [shared](Complex z) { return series::evaluate(*shared, z); };
  impl->derivative = [shared](Complex z) { return series::evaluate_derivative(*shared, z); };
  impl->second_derivative = [shared](Complex z) {
    return series::evaluate_derivative(series::differentiate(*shared), z);
  };
  impl->series = [shared](std::size_t count) {
    series::Coefficients out(count);
    std::copy_n(shared->begin(), std::min(count, shared->size()), out.begin());
    return out;
  };
  return AnalyticFunction(std::move(impl));
}

AnalyticFunction AnalyticFunction::radial_path_integral(std::string id,
                                                        AnalyticFunction integrand) {
  auto impl = std::make_shared<Impl>();
  impl->id = std::move(id);
  impl->kind = FunctionKind::radial_path_integral;
  impl->integrand = integrand.impl_;
  const auto inner = integrand.impl_;
  impl->value = [inner](Complex z) {
    return quadrature::radial_integral([&inner](Complex w) { return inner->value(w); }, z);
  };
  impl->derivative = inner->value;
  impl->second_derivative = inner->derivative;
  if (inner->series) {
    impl->series = [inner](std::size_t n) {
      return series::integrate(inner->series(n));
    };
  }
  return AnalyticFunction(std::move(impl));
}

AnalyticFunction AnalyticFunction::linear_combination(std::string id, const AnalyticFunction& a,
                                                      Complex a_coeff, const AnalyticFunction& b,
                                                      Complex b_coeff) {
  auto impl = std::make_shared<Impl>();
  impl->id = std::move(id);
  impl->kind = generality(a.kind()) >= generality(b.kind()) ? a.kind() : b.kind();
  impl->max_radius = std::min(a.impl_->max_radius, b.impl_->max_radius);
  const auto pa = a.impl_;
  const auto pb = b.impl_;
  impl->value = [pa, pb, a_coeff, b_coeff](Complex z) {
    return a_coeff * pa->value(z) + b_coeff * pb->value(z);
  };
  impl->derivative = [pa, pb, a_coeff, b_coeff](Complex z) {
    return a_coeff * pa->derivative(z) + b_coeff * pb->derivative(z);
  };
  const AnalyticFunction fa = a;
  const AnalyticFunction fb = b;
  impl->second_derivative = [fa, fb, a_coeff, b_coeff](Complex z) {
    return a_coeff * fa.derivative_function().derivative(z) +
           b_coeff * fb.derivative_function().derivative(z);
  };
  if (a.has_series() && b.has_series()) {
    impl->series = [fa, fb, a_coeff, b_coeff](std::size_t n) {
      return series::add(fa.taylor_coefficients(n), fb.taylor_coefficients(n), a_coeff, b_coeff);
    };
  }
  return AnalyticFunction(std::move(impl));
}

AnalyticFunction AnalyticFunction::constant(std::string id, Complex c) {
  return closed_form(
      std::move(id), [c](Complex) { return c; }, [](Complex) { return Complex{}; },
      [c](std::size_t n) { return series::polynomial({c}, n); }, [](Complex) { return Complex{}; });
}

const std::string& AnalyticFunction::id() const { return impl_->id; }
FunctionKind AnalyticFunction::kind() const { return impl_->kind; }
bool AnalyticFunction::has_series() const { return static_cast<bool>(impl_->series); }
std::size_t AnalyticFunction::truncation() const { return impl_->truncation; }

Complex AnalyticFunction::value(Complex z) const {
  require_in_disk(z);
  if (impl_->max_radius < 1.0 && std::abs(z) > impl_->max_radius) {
    throw DomainError("evaluation point beyond the validated radius of " + impl_->id);
  }
  return impl_->value(z);
}

Complex AnalyticFunction::derivative(Complex z) const {
  require_in_disk(z);
  if (impl_->max_radius < 1.0 && std::abs(z) > impl_->max_radius) {
    throw DomainError("evaluation point beyond the validated radius of " + impl_->id);
  }
  return impl_->derivative(z);
}

series::Coefficients AnalyticFunction::taylor_coefficients(std::size_t n) const {
  if (n == 0) {
    throw DomainError("taylor_coefficients needs n >= 1");
  }
  if (!impl_->series) {
    if (impl_->kind == FunctionKind::radial_path_integral) {
      throw NonConvergenceError(
          "no series for path integral " + impl_->id + "; use resample_series", 0.0, 0.0);
    }
    throw PreconditionError("no Taylor expansion available for " + impl_->id);
  }
  return impl_->series(n);
}

AnalyticFunction AnalyticFunction::derivative_function() const {
  if (impl_->integrand) {
    // The derivative of a path integral is its integrand.
    return AnalyticFunction(impl_->integrand);
  }
  auto impl = std::make_shared<Impl>();
  impl->id = impl_->id + "'";
  impl->kind = impl_->kind;
  impl->max_radius = impl_->max_radius;
  impl->value = impl_->derivative;
  if (impl_->second_derivative) {
    impl->derivative = impl_->second_derivative;
  } else {
    impl->derivative = [d = impl_->derivative](Complex z) { return cauchy_derivative(d, z); };
  }
  if (impl_->series) {
    impl->series = [s = impl_->series](std::size_t n) {
      return series::differentiate(s(n + 1));
    };
  }
  return AnalyticFunction(std::move(impl));
}

AnalyticFunction resample_series(const AnalyticFunction& f, double radius, std::size_t nodes,
                                 double max_radius) {
  if (!(radius > 0.0 && radius <= kMaxRadius) || nodes < 8) {
    throw DomainError("resample_series needs 0 < radius <= 1 - 2^-20 and at least 8 nodes");
  }
  std::vector<Complex> samples(nodes);
  for (std::size_t j = 0; j < nodes; ++j) {
    samples[j] = f.value(std::polar(radius, kTwoPi * static_cast<double>(j) / nodes));
  }
  auto coefficients = [samples, radius](std::size_t n) {
    const std::size_t count = samples.size();
    series::Coefficients out(n);
    for (std::size_t m = 0; m < std::min(n, count / 2); ++m) {
      Complex acc{};
      for (std::size_t j = 0; j < count; ++j) {
        const double angle = -kTwoPi * static_cast<double>((m * j) % count) / count;
        acc += samples[j] * std::polar(1.0, angle);
      }
      out[m] = acc / (static_cast<double>(count) * std::pow(radius, static_cast<double>(m)));
    }
    return out;
  };
  return AnalyticFunction::power_series(f.id() + "~series", coefficients, max_radius);
}

}  // namespace hqc
