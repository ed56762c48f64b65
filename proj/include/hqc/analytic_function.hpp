#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "hqc/series.hpp"
#include "hqc/types.hpp"

namespace hqc {

enum class FunctionKind { closed_form, power_series, radial_path_integral };

const char* to_string(FunctionKind kind);

/// An analytic function on the unit disk that can be evaluated together with
/// its derivative. Instances are immutable and cheap to copy; copies share
/// their evaluators.
class AnalyticFunction {
 public:
  using SeriesGenerator = std::function<series::Coefficients(std::size_t)>;

  /// Closed form with exact value and derivative. `series` may be empty when
  /// no Taylor expansion is available; `second_derivative` is optional.
  static AnalyticFunction closed_form(std::string id, ComplexMap value, ComplexMap derivative,
                                      SeriesGenerator series = {},
                                      ComplexMap second_derivative = {});

  /// Truncated power series valid up to `max_radius`. The truncation length N
  /// is doubled from 64 until |a_N| max_radius^N < 1e-12 (hard cap 4096).
  static AnalyticFunction power_series(std::string id, const SeriesGenerator& coefficients,
                                       double max_radius);

  /// F(z) = integral of `integrand` along the segment [0, z].
  static AnalyticFunction radial_path_integral(std::string id, AnalyticFunction integrand);

  /// a_coeff * a + b_coeff * b. The kind is the most general of the two.
  static AnalyticFunction linear_combination(std::string id, const AnalyticFunction& a,
                                             Complex a_coeff, const AnalyticFunction& b,
                                             Complex b_coeff);

  static AnalyticFunction constant(std::string id, Complex c);

  const std::string& id() const;
  FunctionKind kind() const;

  /// Throws DomainError unless |z| < 1 (and |z| <= max_radius for series).
  Complex value(Complex z) const;
  Complex derivative(Complex z) const;
  Complex operator()(Complex z) const { return value(z); }

  bool has_series() const;

  /// First n Taylor coefficients at the origin.
  series::Coefficients taylor_coefficients(std::size_t n) const;

  /// F' as a function in its own right (value = derivative of this).
  AnalyticFunction derivative_function() const;

  /// Truncation length of a power-series function, 0 for other kinds.
  std::size_t truncation() const;

 private:
  struct Impl;
  explicit AnalyticFunction(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

/// Power series of F read off a circle of radius `radius` by the trapezoid
/// Cauchy formula with `nodes` samples.
AnalyticFunction resample_series(const AnalyticFunction& f, double radius, std::size_t nodes,
                                 double max_radius);

}  // namespace hqc
