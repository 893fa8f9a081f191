#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ppot {

enum class ErrorCode {
  LoopEdge,
  DuplicateEdge,
  Disconnected,
  InvalidIndex,
  InvalidPath,
  InvalidArgument,
  SizeLimit,
  NotAProduct,
  NotHyperbolic,
  Overlap,
  NoPath,
  EmptyTarget,
  TooLarge,
  ZeroGradient,
  GraphMismatch,
  BadRadii,
  PathMismatch,
  NotTriangulation,
  Parse,
  NoConvergence,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppot
