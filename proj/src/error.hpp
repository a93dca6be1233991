#pragma once

#include <stdexcept>
#include <string>

namespace magcav {

enum class ErrorKind {
  kInvalidParameters,
  kSingularSteadyState,
  kNumerical,
  kNoUniqueSolution,
  kBudgetExceeded,
  kUndefinedLocus,
  kInvalidConfig,
  kUnknownPreset,
  kIo,
};

/// All library failures carry a kind so the C layer can map them to status
/// codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

const char* to_string(ErrorKind kind) noexcept;

}  // namespace magcav
