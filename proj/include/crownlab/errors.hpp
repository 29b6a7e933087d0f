#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace crownlab {

enum class ErrorKind {
  SingularRecursion,
  PoleProximity,
  NotInPositiveChamber,
  MinorVanishes,
  BranchAmbiguity,
  QuadratureUnconverged,
  EigFailure,
  DegenerateSample,
};

std::string_view to_string(ErrorKind kind);

/// Raised when a numerical guard trips. Callers either resample or abort;
/// the CLI maps these to exit code 3.
class NumericalGuard : public std::runtime_error {
 public:
  NumericalGuard(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace crownlab
