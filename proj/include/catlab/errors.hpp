#pragma once

#include <stdexcept>
#include <string>

namespace catlab {

/// Invalid user-facing parameter (odd N, |z| > 1, negative temperature, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands built on different spin spaces.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed object violated one of its numerical invariants
/// (Hermiticity, trace, positivity, Cramer-Rao ordering, energy drift).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The mean-field coupling is subcritical, so there is no saddle and no separatrix.
class SeparatrixAbsent : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ConfigError(message);
}

}  // namespace detail
}  // namespace catlab
