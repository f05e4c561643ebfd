#include "locsim/error.hpp"

namespace locsim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::kDegreeOverflow: return "DegreeOverflow";
    case ErrorCode::kEdgeCollision: return "EdgeCollision";
    case ErrorCode::kRetryBudgetExhausted: return "RetryBudgetExhausted";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kAlgorithmUndefined: return "AlgorithmUndefined";
    case ErrorCode::kImproperInput: return "ImproperInput";
    case ErrorCode::kNoRFound: return "NoRFound";
    case ErrorCode::kNoPatchInBall: return "NoPatchInBall";
    case ErrorCode::kKCliqueFound: return "KCliqueFound";
    case ErrorCode::kGrowthViolated: return "GrowthViolated";
    case ErrorCode::kOddCycleWithDeltaTwo: return "OddCycleWithDeltaTwo";
    case ErrorCode::kNotShiftable: return "NotShiftable";
    case ErrorCode::kImproperShift: return "ImproperShift";
    case ErrorCode::kNotAugmenting: return "NotAugmenting";
    case ErrorCode::kStepBudgetExhausted: return "StepBudgetExhausted";
    case ErrorCode::kEnumerationBudgetExhausted: return "EnumerationBudgetExhausted";
    case ErrorCode::kBudgetExhausted: return "BudgetExhausted";
    case ErrorCode::kAlgorithmUndefinedAtTerminal: return "AlgorithmUndefinedAtTerminal";
    case ErrorCode::kNoWinningIndex: return "NoWinningIndex";
    case ErrorCode::kNotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace locsim
