#pragma once

#include <stdexcept>
#include <string>

namespace conecalc {

enum class ErrorKind {
  kZeroVector,
  kNonGenericDirection,
  kNonGenericPoint,
  kSingularTerm,
  kImproperTerm,
  kImproperProjection,
  kDistributionalTransform,
  kDecompositionFailure,
  kNonGenericCircle,
  kInvalidPolytope,
  kDimensionMismatch,
  kInvalidInput,
};

const char* to_string(ErrorKind kind);

// All mathematical failures surface as MathError; the kind is what callers
// (and tests) dispatch on.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Scenario/schema problems; the CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conecalc
