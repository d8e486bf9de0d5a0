#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latfac/error.hpp"
#include "latfac/lattice.hpp"
#include "latfac/specfactor2d.hpp"
#include "latfac/trigpoly.hpp"

namespace latfac {

// One convergent tried by the irrational pipeline.
struct ConvergentTrial {
  BigInt p;
  BigInt q;
  std::optional<Bracket> gap;       // amply_gap, for q >= 2
  std::optional<double> threshold;  // (beta - beta~)/|alpha - p/q|, lower bound
  std::optional<std::int64_t> n1_predicted;
  std::optional<std::int64_t> n1_actual;
  std::optional<double> a_diag;
  std::string status;  // "skipped-support", "threshold-failed", "grid-cap", "too-large", "accepted"
};

struct PropertyAResult {
  TrigPoly2 s;
  LatticeStrip strip;          // the requested F(alpha, beta)
  Bracket measured_error;      // ||t - |s|^2||_inf
  double error_bound = 0;      // (2 ||t||_inf + eps) eps
  double eps = 0;
  ConvergenceBudget budget;    // of the polynomial actually factored, g(t)
  ModularMap g;
  std::int64_t n_shift = 0;
  std::optional<double> a_diag;
  bool reflected = false;
  std::optional<BigRational> beta_tilde;
  std::vector<ConvergentTrial> trace;
};

class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(const std::string& what, std::vector<ConvergentTrial> trace)
      : Error(ErrorCode::BudgetExhausted, what), trace_(std::move(trace)) {}
  const std::vector<ConvergentTrial>& trace() const noexcept { return trace_; }

 private:
  std::vector<ConvergentTrial> trace_;
};

// Largest integer strictly below beta.
std::int64_t largest_below(const BigRational& beta);

PropertyAResult factor_strip_axis(const TrigPoly2& t, double beta, double eps);
PropertyAResult factor_strip_rational(const TrigPoly2& t, Rational alpha, double beta, double eps);
PropertyAResult factor_strip_irrational(const TrigPoly2& t, const Alpha& alpha, double beta, double eps,
                                        std::size_t max_convergents = 10);

// Dispatch on the kind of strip.
PropertyAResult factor_strip(const TrigPoly2& t, const LatticeStrip& F, double eps, std::size_t max_convergents = 10);

struct VerifyReport {
  bool containment_ok = false;
  std::vector<Freq2> outside;  // frequencies of s not certified inside F
  bool error_ok = false;
  Bracket error;
  double bound = 0;
  bool pass() const { return containment_ok && error_ok; }
};

// Recomputes |s|^2 and certifies ||t - |s|^2||_inf and freq(s) in F from scratch.
VerifyReport verify_result(const TrigPoly2& t, const PropertyAResult& r);

}  // namespace latfac
