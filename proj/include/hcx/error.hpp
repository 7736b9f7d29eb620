#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hcx {

enum class ErrorCode {
  SyntaxError,
  TooManyVariables,
  TrivialInequality,
  MalformedPermutation,
  IndexOutOfRange,
  DimensionMismatch,
  InvalidArgument,
  ZeroVector,
  DependentBasis,
  InfeasibleInput,
  NotFullDimensional,
  NotACone,
  CenterOutsideP,
  NotAdmissible,
  Unsatisfiable,
  StrictInequalityUnsupported,
  DeclaredBoundViolated,
  BoundsCrossed,
  ResourceCap,
  Discrepancy,
  MaxIterExceeded,
};

std::string_view error_code_name(ErrorCode code);

// Resource caps and oracle discrepancies are reported separately from input
// errors by the CLI (exit code 3 vs 2).
bool is_resource_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hcx
