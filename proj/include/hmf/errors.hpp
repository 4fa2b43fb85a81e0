#pragma once

#include <stdexcept>
#include <string>

namespace hmf {

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

// Division by (or inversion of) something that has no inverse: a zero vector,
// a Clifford number with vanishing norm, a Moebius denominator at a pole.
struct SingularInput : std::domain_error {
  explicit SingularInput(const std::string& what) : std::domain_error(what) {}
};

// Parameters outside the range where a construction is defined (weights,
// dimensions, convergence conditions of a series).
struct SpecViolation : std::invalid_argument {
  explicit SpecViolation(const std::string& what) : std::invalid_argument(what) {}
};

struct Unsupported : std::domain_error {
  explicit Unsupported(const std::string& what) : std::domain_error(what) {}
};

// An algebraic identity that must hold by construction did not.
struct InternalConsistency : std::logic_error {
  explicit InternalConsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hmf
