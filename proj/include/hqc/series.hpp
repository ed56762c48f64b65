#pragma once

// Truncated power series arithmetic. A series of length n holds the Taylor
// coefficients a_0 .. a_{n-1} at the origin.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "hqc/types.hpp"

namespace hqc::series {

using Coefficients = std::vector<Complex>;

/// Coefficients of 1 / (1 - c z).
Coefficients geometric(Complex c, std::size_t n);

/// Polynomial padded or truncated to length n.
Coefficients polynomial(std::initializer_list<Complex> coefficients, std::size_t n);

Coefficients multiply(const Coefficients& a, const Coefficients& b, std::size_t n);

/// a / b; requires b[0] != 0.
Coefficients divide(const Coefficients& a, const Coefficients& b, std::size_t n);

Coefficients scale(Coefficients a, Complex c);
Coefficients add(const Coefficients& a, const Coefficients& b, Complex ca = 1.0, Complex cb = 1.0);

/// Term-wise derivative; the result has the same length with a zero tail.
Coefficients differentiate(const Coefficients& a);

/// Term-wise antiderivative vanishing at 0; the last coefficient is dropped so
/// the length is unchanged.
Coefficients integrate(const Coefficients& a);

Complex evaluate(const Coefficients& a, Complex z);
Complex evaluate_derivative(const Coefficients& a, Complex z);

}  // namespace hqc::series
