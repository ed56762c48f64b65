#pragma once

#include <complex>
#include <functional>
#include <numbers>

namespace hqc {

using Complex = std::complex<double>;
using ComplexMap = std::function<Complex(Complex)>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Largest radius at which means, stars and probes are evaluated. Every closed
/// form in the catalog has a pole on the unit circle, so digits are lost fast
/// beyond this point.
inline constexpr double kMaxRadius = 1.0 - 0x1p-20;

/// w^n by repeated squaring; std::pow on complex goes through log and exp.
inline Complex ipow(Complex w, int n) {
  Complex result = 1.0;
  for (; n > 0; n >>= 1) {
    if (n & 1) result *= w;
    w *= w;
  }
  return result;
}

}  // namespace hqc
