#pragma once

#include <stdexcept>
#include <string>

namespace tcsim {

// Base class for all recoverable tcsim errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands have incompatible dimensions or lengths.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Mixed PureState / DensityOperator arguments where one kind is required.
class KindMismatchError : public Error {
public:
  using Error::Error;
};

// A value violates its type invariants (norm, trace, PSD, probability sum...).
class ValidationError : public Error {
public:
  using Error::Error;
};

// Requested size exceeds the configured dense-simulation limit.
class LimitError : public Error {
public:
  using Error::Error;
};

// Exact enumeration would exceed the branch budget; callers should switch
// to sample mode.
class BudgetError : public Error {
public:
  using Error::Error;
};

// The extraction identity Tr(eta H) = 1 - p_acc failed; message carries
// both values.
class ExtractionError : public Error {
public:
  ExtractionError(const std::string& what, double energy, double expected)
      : Error(what), energy(energy), expected(expected) {}
  double energy;
  double expected;
};

// Experiment configuration is malformed or inconsistent.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A state the code guarantees cannot happen happened anyway.
class InternalError : public std::logic_error {
public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tcsim
