#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modlab {

enum class ErrorCode {
  NotHermitian,
  NotPsd,
  NoConvergence,
  ShapeMismatch,
  BadNormParam,
  BadIndex,
  BadArgument,
  Degenerate,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure in the toolkit is reported through this exception type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace modlab
