#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqt {

enum class ErrorKind {
  ZeroOnCircle,
  NonzeroWinding,
  SingularSection,
  Singular,
  NoConvergence,
  SizeMismatch,
  RadiusViolation,
  OnSpectrumIndicator,
  MalformedFile,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries a kind so callers (and the CLI
/// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// True for kinds that mean "the input does not satisfy a precondition".
bool is_precondition_failure(ErrorKind kind) noexcept;

}  // namespace cqt
