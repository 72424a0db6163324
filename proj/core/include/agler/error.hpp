#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agler {

enum class ErrorCode {
  NonHermitianInput,
  DimensionMismatch,
  DomainMismatch,
  SingularDenominator,
  NotInDisc,
  DuplicatePoints,
  AdmissibilityFailure,
  DegenerateDiagonal,
  PointMismatch,
  FamilyMismatch,
  SingularResolvent,
  SpecError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; `code()` says which contract failed.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace agler
