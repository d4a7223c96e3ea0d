#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dvkit {

enum class ErrorCode {
  DegreeMismatch,
  NotSymmetric,
  FiberDegenerate,
  ZeroOnFiberCircle,
  QuadratureUnresolved,
  ZeroOnTorus,
  SubspaceDegenerate,
  ReflectedCombinationVanishes,
  IsometryViolated,
  UnimodularDEigenvalue,
  InsufficientSpan,
  SingularMatrix,
  InvalidArgument,
  TheoremViolation,
  Parse,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; `code()` distinguishes the
// failure modes callers are expected to react to (e.g. the boundary-zero
// fallback catches ZeroOnTorus).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dvkit
