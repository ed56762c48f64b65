#pragma once

#include <stdexcept>
#include <string>

namespace hqc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (|z| >= 1, p <= 0, K < 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public Error {
 public:
  using Error::Error;
};

class UnknownNameError : public Error {
 public:
  using Error::Error;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, double previous, double last)
      : Error(what + " (last iterates " + std::to_string(previous) + ", " +
              std::to_string(last) + ")"),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

class ClassTagError : public Error {
 public:
  using Error::Error;
};

class CertificationError : public Error {
 public:
  using Error::Error;
};

class GridMismatchError : public Error {
 public:
  using Error::Error;
};

class ZeroOnGridError : public Error {
 public:
  using Error::Error;
};

class SenseReversalError : public Error {
 public:
  using Error::Error;
};

class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

}  // namespace hqc
