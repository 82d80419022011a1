#include "abelsplit/error.hpp"

namespace abelsplit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrime: return "NonPrime";
    case ErrorCode::NonIncreasingExponents: return "NonIncreasingExponents";
    case ErrorCode::ZeroRank: return "ZeroRank";
    case ErrorCode::EmptyBlocks: return "EmptyBlocks";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::SpecMismatch: return "SpecMismatch";
    case ErrorCode::TrivialResult: return "TrivialResult";
    case ErrorCode::SingleBlock: return "SingleBlock";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::PreconditionGap: return "PreconditionGap";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::RankTooSmall: return "RankTooSmall";
    case ErrorCode::NotSplitBlock: return "NotSplitBlock";
    case ErrorCode::MissingBlockSection: return "MissingBlockSection";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace abelsplit
