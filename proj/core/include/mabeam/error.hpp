// SPDX-License-Identifier: Apache-2.0

#ifndef MABEAM_ERROR_HPP
#define MABEAM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace mabeam {

enum class ErrorCode {
  kInvalidArgument,
  kLengthMismatch,
  kOutOfRange,
  kDegenerateDirection,  // desired and undesired direction cosines coincide
  kFeasibilityExceeded,  // too many null directions for the requested construction
  kSingularGram,
  kZeroProjection,
  kOverlap,
  kEmptyGrid,
  kInconsistency,  // two independent evaluation paths disagree
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mabeam

#endif  // MABEAM_ERROR_HPP
