#include "latfac/property_a.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "latfac/error.hpp"

namespace latfac {
namespace {

struct AxisOut {
  TrigPoly2 s;
  ConvergenceBudget budget;
  std::int64_t n = 0;
};

TorusExtrema certify_positive(const TrigPoly2& t) {
  if (t.is_zero() || !is_real_valued(t)) throw Error(ErrorCode::NotPositive, "t must be real-valued and positive");
  try {
    return torus_extrema(t);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPositiveReal) throw Error(ErrorCode::NotPositive, "min t is not certified positive");
    throw;
  }
}

double error_bound(double sup_t, double eps) { return (2.0 * sup_t + eps) * eps; }

// Sum of |coefficients| of t - |s|^2 bounds the sup norm; the slack covers the
// rounding in forming |s|^2. Falls back to branch and bound when that is not
// enough to decide against the bound.
Bracket measure_error(const TrigPoly2& t, const TrigPoly2& s, double bound) {
  const TrigPoly2 diff = t - mod_squared(s);
  if (diff.is_zero()) return {0.0, 0.0};
  constexpr double u = std::numeric_limits<double>::epsilon();
  const double ls = l1_coeff_norm(s);
  const double slack = 4.0 * u * static_cast<double>(s.size() + 2) * ls * ls + 4.0 * u * l1_coeff_norm(t);
  const double upper = l1_coeff_norm(diff) * (1.0 + 4.0 * u * static_cast<double>(diff.size())) + slack;

  std::vector<double> xs, ys;
  constexpr int G = 32;
  for (int a = 0; a < G; ++a)
    for (int b = 0; b < G; ++b) {
      xs.push_back((a + 0.5) / G);
      ys.push_back((b + 0.5) / G);
    }
  double lower = 0;
  for (const cplx& v : eval_many(diff, xs, ys)) lower = std::max(lower, std::abs(v));
  lower = std::max(0.0, lower - slack);
  if (upper <= 1e-3 * bound) return {std::min(lower, upper), upper};
  // Already certified above the bound; refining would not change the verdict.
  if (lower > bound) return {lower, upper};
  return sup_norm_certified(diff, 1e-3 * bound);
}

// e_{0,-n} S_N^+(t) for the strip F(0, beta).
// ext holds the extrema of t, possibly computed before a change of variables.
AxisOut axis_core(const TrigPoly2& t, const BigRational& beta, double eps, const TorusExtrema& ext,
                  const ConvergenceBudget* known = nullptr) {
  AxisOut out;
  out.n = largest_below(beta);
  if (t.n2() > 2 * out.n) throw Error(ErrorCode::StripTooNarrow, "n2(t) exceeds 2n for the strip F(0, beta)");
  out.budget = known ? *known : convergence_budget(t, eps, ext);
  const std::int64_t N = out.budget.N();
  const std::size_t M = default_slice_count(t, N);
  if (M > max_grid()) throw Error(ErrorCode::NoConvergence, "slice count exceeds the grid cap");
  SliceOptions so;
  so.positivity_known = true;
  const SlicedFactor sf = s_factor(t, M, so);
  out.s = shift(s_n_approx(sf, N), 0, -out.n);
  return out;
}

void finish(PropertyAResult& r, const TrigPoly2& t, double eps, const TorusExtrema& ext) {
  r.eps = eps;
  r.error_bound = error_bound(ext.sup_t, eps);
  r.measured_error = measure_error(t, r.s, r.error_bound);
  if (r.measured_error.upper > r.error_bound)
    throw Error(ErrorCode::NoConvergence, "measured error exceeds (2||t|| + eps) eps");
}

void require_point(const LatticeStrip& F) {
  if (!F.beta.is_point()) throw Error(ErrorCode::InvalidInput, "beta must be an exact value");
}

void check_support(const TrigPoly2& t, const LatticeStrip& F) {
  for (const auto& [f, c] : t.coeffs())
    if (!in_difference_set(F, f))
      throw Error(ErrorCode::FreqOutsideStrip, "freq(t) is not contained in F - F");
}

PropertyAResult axis_pipeline(const TrigPoly2& t, const LatticeStrip& F, double eps, const TorusExtrema& ext) {
  PropertyAResult r;
  r.strip = F;
  const AxisOut a = axis_core(t, F.beta.lo, eps, ext);
  r.s = a.s;
  r.budget = a.budget;
  r.n_shift = a.n;
  for (const auto& [f, c] : r.s.coeffs())
    if (!strip_contains(F, f)) throw Error(ErrorCode::FreqOutsideStrip, "axis factor left the strip");
  finish(r, t, eps, ext);
  return r;
}

// |alpha| <= 1, rational, exact beta.
PropertyAResult rational_core(const TrigPoly2& t, const LatticeStrip& F, double eps, const TorusExtrema& ext) {
  const Rational a = F.alpha.as_rational();
  if (a.p == 0) return axis_pipeline(t, F, eps, ext);
  const ModularMap g = find_g_rational(a);
  const TrigPoly2 gt = sl2_apply_poly(g, t);
  const AxisOut ax = axis_core(gt, F.beta.lo * BigRational(a.q), eps, ext);
  PropertyAResult r;
  r.strip = F;
  r.g = g;
  r.s = sl2_apply_poly(g.inverse(), ax.s);
  r.budget = ax.budget;
  r.n_shift = ax.n;
  for (const auto& [f, c] : r.s.coeffs())
    if (!strip_contains(F, f)) throw Error(ErrorCode::FreqOutsideStrip, "factor frequency outside F(alpha, beta)");
  if (a.q >= 2) {
    const double q = static_cast<double>(a.q);
    r.a_diag = static_cast<double>(r.s.n1()) / (q * q * std::log(q));
  }
  finish(r, t, eps, ext);
  return r;
}

PropertyAResult swap_back(PropertyAResult r, const LatticeStrip& original, const TrigPoly2& t) {
  r.s = swap_variables(r.s);
  r.strip = original;
  r.reflected = true;
  // The error is invariant under the swap, but re-measure against the caller's t.
  r.measured_error = measure_error(t, r.s, r.error_bound);
  return r;
}

std::int64_t max_abs_j(const ModularMap& ginv, std::int64_t N, std::int64_t klo, std::int64_t khi) {
  std::int64_t best = 0;
  for (std::int64_t j : {-N, N})
    for (std::int64_t k : {klo, khi}) best = std::max(best, std::abs(ginv.apply({j, k}).j));
  return best;
}

bool fits_int64(const BigInt& v) {
  return boost::multiprecision::abs(v) <= BigInt(std::numeric_limits<std::int64_t>::max() / 4);
}

PropertyAResult irrational_core(const TrigPoly2& t, const LatticeStrip& F, double eps, std::size_t max_convergents,
                                const TorusExtrema& ext) {
  const Alpha& alpha = F.alpha;
  BigRational hstar = 0;
  for (const auto& [f, c] : t.coeffs()) hstar = std::max<BigRational>(hstar, strip_offset(alpha, f).hi / 2);
  const BigRational beta_tilde = (F.beta.lo + hstar) / 2;
  const BigRational room = F.beta.lo - beta_tilde;

  std::vector<ConvergentTrial> trace;
  const auto convs = certified_convergents(alpha, max_convergents);
  for (const Convergent& cv : convs) {
    ConvergentTrial tr;
    tr.p = cv.p;
    tr.q = cv.q;
    if (cv.q >= 2) tr.gap = amply_gap(alpha, -cv.p, cv.q);
    const Alpha at = Alpha::rational(BigRational(cv.p, cv.q));
    const RationalInterval diff = abs(alpha.interval() - at.interval());
    if (diff.hi.sign() > 0) tr.threshold = round_down(room / diff.hi);
    else tr.threshold = std::numeric_limits<double>::infinity();
    if (!fits_int64(cv.p) || !fits_int64(cv.q)) {
      tr.status = "too-large";
      trace.push_back(std::move(tr));
      continue;
    }
    const LatticeStrip Ft(at, RationalInterval::point(beta_tilde));
    bool support = true;
    for (const auto& [f, c] : t.coeffs()) support = support && in_difference_set(Ft, f);
    if (!support) {
      tr.status = "skipped-support";
      trace.push_back(std::move(tr));
      continue;
    }
    const Rational ar = at.as_rational();
    const ModularMap g = find_g_rational(ar);
    const TrigPoly2 gt = sl2_apply_poly(g, t);
    const BigRational beta_g = beta_tilde * BigRational(ar.q);
    const std::int64_t n = largest_below(beta_g);
    const ConvergenceBudget budget = convergence_budget(gt, eps, ext);
    const std::int64_t N = budget.N();
    if (default_slice_count(gt, N) > max_grid()) {
      tr.status = "grid-cap";
      trace.push_back(std::move(tr));
      continue;
    }
    const ModularMap ginv = g.inverse();
    tr.n1_predicted = max_abs_j(ginv, N, -n, gt.n2_plus() - n);
    auto below_threshold = [&](std::int64_t n1) { return BigRational(n1) * diff.hi < room; };
    if (!below_threshold(*tr.n1_predicted)) {
      tr.status = "threshold-failed";
      trace.push_back(std::move(tr));
      continue;
    }
    const AxisOut ax = axis_core(gt, beta_g, eps, ext, &budget);
    PropertyAResult r;
    r.strip = F;
    r.g = g;
    r.s = sl2_apply_poly(ginv, ax.s);
    r.budget = ax.budget;
    r.n_shift = ax.n;
    r.beta_tilde = beta_tilde;
    tr.n1_actual = r.s.n1();
    if (ar.q >= 2) {
      const double q = static_cast<double>(ar.q);
      tr.a_diag = static_cast<double>(*tr.n1_actual) / (q * q * std::log(q));
      r.a_diag = tr.a_diag;
    }
    bool contained = below_threshold(*tr.n1_actual);
    for (const auto& [f, c] : r.s.coeffs())
      contained = contained && lemma_lattice_check(-ar.p, ar.q, alpha, F.beta, beta_tilde, f);
    if (!contained) {
      tr.status = "containment-failed";
      trace.push_back(std::move(tr));
      continue;
    }
    tr.status = "accepted";
    trace.push_back(std::move(tr));
    r.trace = std::move(trace);
    finish(r, t, eps, ext);
    return r;
  }
  throw BudgetExhaustedError("no convergent among " + std::to_string(convs.size()) + " met the lattice threshold",
                             std::move(trace));
}

}  // namespace

std::int64_t largest_below(const BigRational& beta) {
  return (ceil_of(beta) - 1).convert_to<std::int64_t>();
}

PropertyAResult factor_strip_axis(const TrigPoly2& t, double beta, double eps) {
  return factor_strip(t, LatticeStrip(Alpha::rational(0, 1), beta), eps);
}

PropertyAResult factor_strip_rational(const TrigPoly2& t, Rational alpha, double beta, double eps) {
  if (alpha.q < 1) throw Error(ErrorCode::InvalidInput, "alpha: q must be >= 1");
  if (std::gcd(alpha.p, alpha.q) != 1) throw Error(ErrorCode::NotLowestTerms, "alpha = p/q is not in lowest terms");
  return factor_strip(t, LatticeStrip(Alpha::rational(alpha.p, alpha.q), beta), eps);
}

PropertyAResult factor_strip_irrational(const TrigPoly2& t, const Alpha& alpha, double beta, double eps,
                                        std::size_t max_convergents) {
  if (alpha.is_rational())
    return factor_strip(t, LatticeStrip(Alpha::real_interval(alpha.interval(), alpha.digits()), beta), eps,
                        max_convergents);
  return factor_strip(t, LatticeStrip(alpha, beta), eps, max_convergents);
}

PropertyAResult factor_strip(const TrigPoly2& t, const LatticeStrip& F, double eps, std::size_t max_convergents) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidInput, "eps must be positive");
  require_point(F);
  const TorusExtrema ext = certify_positive(t);
  check_support(t, F);

  const RationalInterval aa = abs(F.alpha.interval());
  if (F.alpha.is_rational()) {
    if (aa.lo.sign() == 0) return axis_pipeline(t, F, eps, ext);
    if (aa.lo <= 1) return rational_core(t, F, eps, ext);
    return swap_back(rational_core(swap_variables(t), reflect(F), eps, ext), F, t);
  }
  if (aa.lo.sign() <= 0) throw Error(ErrorCode::ZeroAlpha, "irrational pipeline needs alpha bounded away from 0");
  if (aa.hi < 1) return irrational_core(t, F, eps, max_convergents, ext);
  if (aa.lo > 1) return swap_back(irrational_core(swap_variables(t), reflect(F), eps, max_convergents, ext), F, t);
  throw Error(ErrorCode::Undecidable, "|alpha| is not separated from 1 at the given precision");
}

VerifyReport verify_result(const TrigPoly2& t, const PropertyAResult& r) {
  VerifyReport v;
  v.containment_ok = true;
  for (const auto& [f, c] : r.s.coeffs()) {
    bool inside = false;
    try {
      inside = strip_contains(r.strip, f);
    } catch (const Error&) {
      inside = false;
    }
    if (!inside) {
      v.containment_ok = false;
      v.outside.push_back(f);
    }
  }
  v.bound = error_bound(sup_norm_certified(t, 1e-9 * l1_coeff_norm(t)).upper, r.eps);
  v.error = measure_error(t, r.s, v.bound);
  v.error_ok = v.error.upper <= v.bound;
  return v;
}

}  // namespace latfac
