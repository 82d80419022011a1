#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abelsplit {

enum class ErrorCode {
  NonPrime,
  NonIncreasingExponents,
  ZeroRank,
  EmptyBlocks,
  ModulusTooLarge,
  ShapeMismatch,
  SpecMismatch,
  TrivialResult,
  SingleBlock,
  BudgetExceeded,
  ConstraintViolation,
  NotAUnit,
  PreconditionGap,
  PreconditionViolation,
  RankTooSmall,
  NotSplitBlock,
  MissingBlockSection,
  VerificationFailed,
  Overflow,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library. The code is stable and is what the
/// CLI and the python bindings report; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace abelsplit
