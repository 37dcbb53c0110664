#include "nilspace/error.hpp"

namespace nilspace {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::TowerMismatch: return "TowerMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NonCommutativeTower: return "NonCommutativeTower";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NoAdaptedVector: return "NoAdaptedVector";
    case ErrorKind::NotMaximalDimension: return "NotMaximalDimension";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::CornerStructureViolation: return "CornerStructureViolation";
    case ErrorKind::FinalCheckFailed: return "FinalCheckFailed";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& message, const std::string& step) {
  std::string out(to_string(kind));
  if (!step.empty()) out += " at " + step;
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message, std::string step)
    : std::runtime_error(compose(kind, message, step)),
      kind_(kind),
      message_(message),
      step_(std::move(step)) {}

Error Error::with_step_prefix(std::string_view prefix) const {
  std::string step(prefix);
  if (!step_.empty()) step += "/" + step_;
  return Error(kind_, message_, std::move(step));
}

bool Error::is_precondition_failure() const noexcept {
  switch (kind_) {
    case ErrorKind::NoAdaptedVector:
    case ErrorKind::NotMaximalDimension:
    case ErrorKind::NotNilpotent:
    case ErrorKind::CornerStructureViolation:
    case ErrorKind::FinalCheckFailed:
    case ErrorKind::Singular:
    case ErrorKind::CapExceeded:
    case ErrorKind::NonCommutativeTower:
      return true;
    default:
      return false;
  }
}

}  // namespace nilspace
