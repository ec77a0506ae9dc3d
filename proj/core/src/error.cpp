// SPDX-License-Identifier: Apache-2.0

#include "mabeam/error.hpp"

namespace mabeam {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDegenerateDirection: return "DegenerateDirection";
    case ErrorCode::kFeasibilityExceeded: return "FeasibilityExceeded";
    case ErrorCode::kSingularGram: return "SingularGram";
    case ErrorCode::kZeroProjection: return "ZeroProjection";
    case ErrorCode::kOverlap: return "Overlap";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kInconsistency: return "Inconsistency";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace mabeam
