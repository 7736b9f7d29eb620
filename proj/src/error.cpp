#include "hcx/error.hpp"

namespace hcx {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TooManyVariables: return "TooManyVariables";
    case ErrorCode::TrivialInequality: return "TrivialInequality";
    case ErrorCode::MalformedPermutation: return "MalformedPermutation";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DependentBasis: return "DependentBasis";
    case ErrorCode::InfeasibleInput: return "InfeasibleInput";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::NotACone: return "NotACone";
    case ErrorCode::CenterOutsideP: return "CenterOutsideP";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::StrictInequalityUnsupported: return "StrictInequalityUnsupported";
    case ErrorCode::DeclaredBoundViolated: return "DeclaredBoundViolated";
    case ErrorCode::BoundsCrossed: return "BoundsCrossed";
    case ErrorCode::ResourceCap: return "ResourceCap";
    case ErrorCode::Discrepancy: return "DiscrepancyError";
    case ErrorCode::MaxIterExceeded: return "MaxIterExceeded";
  }
  return "Unknown";
}

bool is_resource_error(ErrorCode code) {
  return code == ErrorCode::ResourceCap || code == ErrorCode::Discrepancy ||
         code == ErrorCode::MaxIterExceeded;
}

}  // namespace hcx
