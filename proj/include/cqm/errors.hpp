#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands whose dimensions do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter outside the domain where the model or operation is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public NumericalError {
 public:
  NotHermitianError(const std::string& what, double asymmetry)
      : NumericalError(what), asymmetry_(asymmetry) {}
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

class DegeneracyError : public NumericalError {
 public:
  DegeneracyError(const std::string& what, double gap)
      : NumericalError(what), gap_(gap) {}
  double gap() const { return gap_; }

 private:
  double gap_;
};

class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double leakage, std::size_t suggested)
      : NumericalError(what), leakage_(leakage), suggested_(suggested) {}
  double leakage() const { return leakage_; }
  std::size_t suggested_truncation() const { return suggested_; }

 private:
  double leakage_;
  std::size_t suggested_;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double change)
      : NumericalError(what), change_(change) {}
  double change() const { return change_; }

 private:
  double change_;
};

}  // namespace cqm
