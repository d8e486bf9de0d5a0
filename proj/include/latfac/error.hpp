#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latfac {

enum class ErrorCode {
  InvalidInput,
  WindowAliasing,
  AliasRisk,
  NotInvertible,
  NonzeroWinding,
  NotPositiveReal,
  NotPositive,
  NoConvergence,
  RootOnCircle,
  Undecidable,
  ZeroAlpha,
  DegenerateDirection,
  NotLowestTerms,
  PrecisionExhausted,
  FreqOutsideStrip,
  StripTooNarrow,
  BudgetExhausted,
};

std::string_view to_string(ErrorCode code);

// Process exit status for a failure of this kind:
// 2 = input or precondition, 3 = numerical, 4 = budget.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Largest sampling grid any adaptive loop may use. Reads LATFAC_MAX_GRID
// once; defaults to 2^22.
std::size_t max_grid();

}  // namespace latfac
