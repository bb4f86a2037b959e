#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbi {

enum class ErrorCode {
  AmbiguousRank,
  BackendMismatch,
  BadParameter,
  CapExceeded,
  ContainedPair,
  DegenerateConfig,
  EmptySubspace,
  InternalError,
  InvalidInput,
  NoFieldSqrt,
  NotA2Group,
  NotInvariant,
  NotOrthogonal,
  NotPseudoreflectionGroup,
  NotSpecialOrthogonal,
  PNotDividing,
  TooLarge,
  Unclassifiable,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. The code is what callers dispatch on;
/// the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orbi
