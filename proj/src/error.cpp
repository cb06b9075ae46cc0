#include "modlab/error.hpp"

namespace modlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadNormParam: return "BadNormParam";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::BadArgument: return "BadArgument";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace modlab
