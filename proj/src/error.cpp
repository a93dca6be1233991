#include "error.hpp"

namespace magcav {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kInvalidParameters: return "invalid-parameters";
    case ErrorKind::kSingularSteadyState: return "singular-steady-state";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kNoUniqueSolution: return "no-unique-solution";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kUndefinedLocus: return "undefined-locus";
    case ErrorKind::kInvalidConfig: return "invalid-config";
    case ErrorKind::kUnknownPreset: return "unknown-preset";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

}  // namespace magcav
