#include "hqc/series.hpp"

#include <algorithm>

#include "hqc/errors.hpp"

namespace hqc::series {

Coefficients geometric(Complex c, std::size_t n) {
  Coefficients out(n);
  Complex power = 1.0;
  for (auto& a : out) {
    a = power;
    power *= c;
  }
  return out;
}

Coefficients polynomial(std::initializer_list<Complex> coefficients, std::size_t n) {
  Coefficients out(n);
  std::copy_n(coefficients.begin(), std::min(n, coefficients.size()), out.begin());
  return out;
}

Coefficients multiply(const Coefficients& a, const Coefficients& b, std::size_t n) {
  Coefficients out(n);
  const std::size_t na = std::min(a.size(), n);
  for (std::size_t i = 0; i < na; ++i) {
    if (a[i] == Complex{}) {
      continue;
    }
    const std::size_t nb = std::min(b.size(), n - i);
    for (std::size_t j = 0; j < nb; ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Coefficients divide(const Coefficients& a, const Coefficients& b, std::size_t n) {
  if (b.empty() || b[0] == Complex{}) {
    throw DomainError("series division by a series vanishing at the origin");
  }
  Coefficients out(n);
  for (std::size_t m = 0; m < n; ++m) {
    Complex acc = m < a.size() ? a[m] : Complex{};
    const std::size_t top = std::min(m, b.size() - 1);
    for (std::size_t j = 1; j <= top; ++j) {
      acc -= b[j] * out[m - j];
    }
    out[m] = acc / b[0];
  }
  return out;
}

Coefficients scale(Coefficients a, Complex c) {
  for (auto& x : a) {
    x *= c;
  }
  return a;
}

Coefficients add(const Coefficients& a, const Coefficients& b, Complex ca, Complex cb) {
  Coefficients out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] += ca * a[i];
  }
  for (std::size_t i = 0; i < b.size(); ++i) {
    out[i] += cb * b[i];
  }
  return out;
}

Coefficients differentiate(const Coefficients& a) {
  Coefficients out(a.size());
  for (std::size_t m = 1; m < a.size(); ++m) {
    out[m - 1] = static_cast<double>(m) * a[m];
  }
  return out;
}

Coefficients integrate(const Coefficients& a) {
  Coefficients out(a.size());
  for (std::size_t m = 1; m < a.size(); ++m) {
    out[m] = a[m - 1] / static_cast<double>(m);
  }
  return out;
}

Complex evaluate(const Coefficients& a, Complex z) {
  Complex acc{};
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

Complex evaluate_derivative(const Coefficients& a, Complex z) {
  Complex acc{};
  for (std::size_t m = a.size(); m-- > 1;) {
    acc = acc * z + static_cast<double>(m) * a[m];
  }
  return acc;
}

}  // namespace hqc::series
