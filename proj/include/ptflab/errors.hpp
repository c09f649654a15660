#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ptflab {

// Numeric values are part of the C ABI (see ptflab.h); append only.
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  DuplicateRoots = 2,
  DisallowedOrder = 3,
  MonotonicityViolation = 4,
  NonTermination = 5,
  DegreeViolation = 6,
  InvalidDistribution = 7,
  ComputationTooLarge = 8,
  SizeLimit = 9,
  EpsilonSearchFailed = 10,
  ToleranceBreach = 11,
  AssertionFailure = 12,
  Io = 13,
  Internal = 14,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptflab
