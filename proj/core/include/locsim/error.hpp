#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace locsim {

/// Failure categories surfaced by the library. Each value names the
/// condition, not the module that raised it.
enum class ErrorCode {
  kInfeasibleSpec,
  kDegreeOverflow,
  kEdgeCollision,
  kRetryBudgetExhausted,
  kParse,
  kAlgorithmUndefined,
  kImproperInput,
  kNoRFound,
  kNoPatchInBall,
  kKCliqueFound,
  kGrowthViolated,
  kOddCycleWithDeltaTwo,
  kNotShiftable,
  kImproperShift,
  kNotAugmenting,
  kStepBudgetExhausted,
  kEnumerationBudgetExhausted,
  kBudgetExhausted,
  kAlgorithmUndefinedAtTerminal,
  kNoWinningIndex,
  kNotAHomomorphism,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace locsim
