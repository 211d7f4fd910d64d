#include "cqt/error.hpp"

namespace cqt {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroOnCircle: return "ZeroOnCircle";
    case ErrorKind::NonzeroWinding: return "NonzeroWinding";
    case ErrorKind::SingularSection: return "SingularSection";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SizeMismatch: return "SizeMismatch";
    case ErrorKind::RadiusViolation: return "RadiusViolation";
    case ErrorKind::OnSpectrumIndicator: return "OnSpectrumIndicator";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_precondition_failure(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ZeroOnCircle:
    case ErrorKind::NonzeroWinding:
    case ErrorKind::SingularSection:
    case ErrorKind::Singular:
    case ErrorKind::SizeMismatch:
    case ErrorKind::RadiusViolation:
    case ErrorKind::OnSpectrumIndicator:
      return true;
    default:
      return false;
  }
}

}  // namespace cqt
