#include "latfac/error.hpp"

#include <cstdlib>

namespace latfac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::WindowAliasing: return "WindowAliasing";
    case ErrorCode::AliasRisk: return "AliasRisk";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NonzeroWinding: return "NonzeroWinding";
    case ErrorCode::NotPositiveReal: return "NotPositiveReal";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::RootOnCircle: return "RootOnCircle";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::ZeroAlpha: return "ZeroAlpha";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::NotLowestTerms: return "NotLowestTerms";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::FreqOutsideStrip: return "FreqOutsideStrip";
    case ErrorCode::StripTooNarrow: return "StripTooNarrow";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotInvertible:
    case ErrorCode::NoConvergence:
    case ErrorCode::RootOnCircle:
    case ErrorCode::Undecidable:
    case ErrorCode::PrecisionExhausted:
      return 3;
    case ErrorCode::BudgetExhausted:
      return 4;
    default:
      return 2;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

std::size_t max_grid() {
  static const std::size_t cap = [] {
    std::size_t value = std::size_t{1} << 22;
    if (const char* env = std::getenv("LATFAC_MAX_GRID")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end != env && parsed >= 64) value = static_cast<std::size_t>(parsed);
    }
    return value;
  }();
  return cap;
}

}  // namespace latfac
