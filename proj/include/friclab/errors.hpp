#pragma once

#include <stdexcept>
#include <string>

namespace friclab {

/// Bad or inconsistent user-facing configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Base for runtime numerical failures (CLI exit code 3).
class NumericsError : public std::runtime_error {
 public:
  explicit NumericsError(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public NumericsError {
 public:
  explicit QuadratureError(const std::string& what)
      : NumericsError("quadrature not converged: " + what) {}
};

class InfraredSingularError : public NumericsError {
 public:
  explicit InfraredSingularError(const std::string& what)
      : NumericsError("infrared-singular evaluation: " + what) {}
};

class NonIntegrableError : public NumericsError {
 public:
  explicit NonIntegrableError(const std::string& what)
      : NumericsError("non-integrable exponent: " + what) {}
};

class InsufficientDataError : public NumericsError {
 public:
  explicit InsufficientDataError(const std::string& what)
      : NumericsError("insufficient data: " + what) {}
};

class BlowUpError : public NumericsError {
 public:
  explicit BlowUpError(const std::string& what)
      : NumericsError("blow-up detected: " + what) {}
};

class NotSettledError : public NumericsError {
 public:
  explicit NotSettledError(const std::string& what)
      : NumericsError("transient not settled: " + what) {}
};

class EigensolverError : public NumericsError {
 public:
  explicit EigensolverError(const std::string& what) : NumericsError(what) {}
};

class DimensionCapError : public NumericsError {
 public:
  explicit DimensionCapError(const std::string& what)
      : NumericsError("dimension cap exceeded: " + what) {}
};

class SmallCouplingError : public NumericsError {
 public:
  explicit SmallCouplingError(const std::string& what)
      : NumericsError("outside small-coupling regime: " + what) {}
};

class EpsilonResolutionError : public NumericsError {
 public:
  explicit EpsilonResolutionError(const std::string& what)
      : NumericsError("epsilon under-resolved: " + what) {}
};

}  // namespace friclab
