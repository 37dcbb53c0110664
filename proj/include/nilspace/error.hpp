#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilspace {

enum class ErrorKind {
  InvalidSpec,
  TowerMismatch,
  DivisionByZero,
  WrongLength,
  ShapeMismatch,
  Singular,
  NotSquare,
  NonCommutativeTower,
  ZeroVector,
  IndexOutOfRange,
  CapExceeded,
  NoAdaptedVector,
  NotMaximalDimension,
  NotNilpotent,
  CornerStructureViolation,
  FinalCheckFailed,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library. `step()` names the pipeline stage
/// ("n=3/corner_shear", ...) when the failure happened inside a multi-step
/// procedure, and is empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string step = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& step() const noexcept { return step_; }
  const std::string& message() const noexcept { return message_; }

  /// Same error with `prefix` prepended to the step path.
  Error with_step_prefix(std::string_view prefix) const;

  /// Errors caused by the input violating a mathematical precondition, as
  /// opposed to malformed input or API misuse.
  bool is_precondition_failure() const noexcept;

 private:
  ErrorKind kind_;
  std::string message_;
  std::string step_;
};

}  // namespace nilspace
