#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "latfac/corpus.hpp"
#include "latfac/error.hpp"
#include "latfac/kernels.hpp"
#include "latfac/lattice.hpp"
#include "latfac/property_a.hpp"
#include "latfac/specfactor1d.hpp"
#include "latfac/specfactor2d.hpp"

using namespace latfac;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& line) {
  std::printf("  info: %s\n", line.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string read_digits(const std::string& name) {
  std::ifstream in(std::string(LATFAC_FIXTURES) + "/" + name);
  std::string s;
  in >> s;
  return s;
}

TrigPoly2 three_plus_half(Freq2 f) { return TrigPoly2{{{0, 0}, 3.0}, {f, 0.5}, {{-f.j, -f.k}, 0.5}}; }

const TrigPoly2 kMain1{{{-1, 0}, 0.25}, {{0, -1}, 0.25}, {{0, 0}, 3.0}, {{0, 1}, 0.25}, {{1, 0}, 0.25}};

void criterion1() {
  const auto t0 = Clock::now();
  int violations = 0;
  std::string first;
  for (std::int64_t N = 1; N <= 64; ++N) {
    for (KernelType k : {KernelType::Dirichlet, KernelType::AnalyticPlus, KernelType::AnalyticMinus,
                         KernelType::HalfPlusAnalyticPlus, KernelType::HalfPlusAnalyticMinus, KernelType::Hilbert}) {
      const KernelKind kind{k, N};
      const double norm = kernel_l1_norm(kind);
      const double bound = kernel_l1_bound(kind);
      if (!(norm <= bound)) {
        if (violations == 0) first = fmt("%s N=%lld: %.6f > %.6f", to_string(k), static_cast<long long>(N), norm, bound);
        ++violations;
      }
    }
  }
  const double d1 = kernel_l1_norm({KernelType::Dirichlet, 1});
  const double d1_exact = 1.0 / 3.0 + 2.0 * std::sqrt(3.0) / std::numbers::pi;
  const double secs = seconds_since(t0);
  const bool ok = violations == 0 && std::abs(d1 - d1_exact) <= 1e-6 && secs < 10.0;
  report(1, ok,
         fmt("kernel L1 bounds for N=1..64: %d violations%s%s; |D_1| error %.2e; %.2fs", violations,
             violations ? ", first " : "", first.c_str(), std::abs(d1 - d1_exact), secs));
}

void criteria2and3() {
  const auto t0 = Clock::now();
  const auto corpus = corpus1d(CorpusOptions{});
  int identity_bad = 0, agree_bad = 0, bound_bad = 0, errors = 0;
  double worst_identity = 0, worst_agree = 0;
  for (const TrigPoly1& t : corpus) {
    try {
      const FactorPair fp = psi_factor(t, 1e-11 * l1_coeff_norm(t));
      const double sup = sup_norm_certified(t, 1e-9 * l1_coeff_norm(t)).lower;
      const Bracket diff = sup_norm_certified(fp.psi_plus * fp.psi_minus - t, 1e-12 * sup);
      const double rel = diff.upper / sup;
      worst_identity = std::max(worst_identity, rel);
      if (!(rel <= 1e-9)) ++identity_bad;

      const RootFactorPair rp = psi_factor_roots(t);
      double d = 0;
      for (std::int64_t j = 0; j <= t.n_plus(); ++j) d = std::max(d, std::abs(fp.psi_plus.coeff(j) - rp.psi_plus.coeff(j)));
      for (std::int64_t j = -t.n_minus(); j <= 0; ++j)
        d = std::max(d, std::abs(fp.psi_minus.coeff(j) - rp.psi_minus.coeff(j)));
      worst_agree = std::max(worst_agree, d);
      if (!(d <= 1e-8)) ++agree_bad;
    } catch (const std::exception& e) {
      ++errors;
      info(std::string("criterion 2 case error: ") + e.what());
    }
  }
  const double secs2 = seconds_since(t0);
  report(2, identity_bad == 0 && agree_bad == 0 && errors == 0 && secs2 < 60.0,
         fmt("%zu polynomials: identity failures %d (worst %.2e), root-oracle mismatches %d (worst %.2e), errors %d; "
             "%.1fs",
             corpus.size(), identity_bad, worst_identity, agree_bad, worst_agree, errors, secs2));

  double worst_ratio = 0;
  int bound_errors = 0;
  for (const TrigPoly1& t : corpus) {
    try {
      const PsiBoundReport r = psi_bound_check(t);
      worst_ratio = std::max(worst_ratio, r.sup_plus.upper / r.profile.B);
      if (!r.bound_pass) ++bound_bad;
    } catch (const std::exception& e) {
      ++bound_errors;
      info(std::string("criterion 3 case error: ") + e.what());
    }
  }
  report(3, bound_bad == 0 && bound_errors == 0,
         fmt("%zu polynomials: %d violations of |Psi+| <= B, errors %d, largest |Psi+|/B = %.3e", corpus.size(),
             bound_bad, bound_errors, worst_ratio));
}

void criterion4() {
  std::vector<double> ns, logs;
  bool ok = true;
  std::string detail;
  for (std::int64_t n : {5, 7, 9, 11}) {
    const Example1Row r = example1_row(n);
    const double m_rel = std::abs(r.mahler / r.mahler_predicted - 1.0);
    const double s_rel = std::abs(r.sup_t / r.sup_t_predicted - 1.0);
    if (n >= 9) ok = ok && m_rel <= 0.10 && s_rel <= 0.10;
    info(fmt("n=%lld M=%.5f (%.1f%% off exp(2/pi)) |t|=%.4f (%.1f%% off 1+e^2) log|Psi+|=%.4f",
             static_cast<long long>(n), r.mahler, 100 * m_rel, r.sup_t, 100 * s_rel, r.log_sup_psi));
    ns.push_back(static_cast<double>(n));
    logs.push_back(r.log_sup_psi);
  }
  const double mx = std::accumulate(ns.begin(), ns.end(), 0.0) / ns.size();
  const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    sxy += (ns[i] - mx) * (logs[i] - my);
    sxx += (ns[i] - mx) * (ns[i] - mx);
  }
  const double slope = sxy / sxx;
  const bool slope_ok = std::abs(slope - 0.58) <= 0.1;
  report(4, ok && slope_ok,
         fmt("Mahler and sup-norm within 10%% at n>=9: %s; slope of log|Psi+| vs n = %.4f (target 0.58 +- 0.1)",
             ok ? "yes" : "no", slope));
}

void criterion5() {
  const auto t0 = Clock::now();
  CorpusOptions o;
  o.seed = 2;
  o.count = 50;
  o.max_n1 = 4;
  o.max_n2 = 4;
  o.min_lo = 0.5;
  o.min_hi = 1.5;
  const auto corpus = corpus2d(o);
  int dist_bad = 0, env_bad = 0, errors = 0, gamma_profile_bad = 0;
  double worst = 0;
  for (const TrigPoly2& t : corpus) {
    try {
      const SconvReport r = verify_sconv(t, 1e-3);
      worst = std::max(worst, r.distance);
      if (!r.distance_pass) ++dist_bad;
      if (!r.envelope_violations.empty()) ++env_bad;
      if (!r.gamma_profile_pass) ++gamma_profile_bad;
    } catch (const std::exception& e) {
      ++errors;
      info(std::string("criterion 5 case error: ") + e.what());
    }
  }
  const double secs = seconds_since(t0);
  info(fmt("slice profile of Gamma_z t outside rho/2e, tau+log 2 on %d of %zu cases", gamma_profile_bad, corpus.size()));
  report(5, dist_bad == 0 && env_bad == 0 && errors == 0 && secs < 300.0,
         fmt("%zu polynomials at eps=1e-3: distance failures %d (worst %.2e), envelope failures %d, errors %d; %.1fs",
             corpus.size(), dist_bad, worst, env_bad, errors, secs));
}

// Random g in SL2(Z) with entries bounded by 20.
ModularMap random_sl2(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> ent(-20, 20);
  for (;;) {
    const std::int64_t a = ent(rng), b = ent(rng);
    if (std::gcd(a, b) != 1) continue;
    std::vector<std::pair<std::int64_t, std::int64_t>> sols;
    for (std::int64_t c = -20; c <= 20; ++c)
      for (std::int64_t d = -20; d <= 20; ++d)
        if (a * d - b * c == 1) sols.emplace_back(c, d);
    if (sols.empty()) continue;
    const auto [c, d] = sols[std::uniform_int_distribution<std::size_t>(0, sols.size() - 1)(rng)];
    return ModularMap(a, b, c, d);
  }
}

void criterion6() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::int64_t> num(-20, 20), den(1, 20);
  int cases = 0, mismatches = 0, degenerate = 0;
  const std::int64_t jmax = 50;
  while (cases < 100) {
    const ModularMap g = random_sl2(rng);
    const LatticeStrip F(Alpha::rational(BigRational(num(rng), den(rng))),
                         RationalInterval::point(BigRational(den(rng), den(rng))));
    LatticeStrip G;
    try {
      G = strip_image(g, F);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateDirection) throw;
      ++degenerate;
      continue;
    }
    // g(F) restricted to the window |j|, |k| <= jmax, compared with the formula strip.
    const ModularMap ginv = g.inverse();
    for (std::int64_t j = -jmax; j <= jmax; ++j)
      for (std::int64_t k = -jmax; k <= jmax; ++k) {
        const Freq2 p{j, k};
        if (strip_contains(G, p) != strip_contains(F, ginv.apply(p))) ++mismatches;
      }
    ++cases;
  }
  report(6, mismatches == 0,
         fmt("%d random rational (g, alpha, beta), window %lld: %d mismatches (%d degenerate draws skipped)", cases,
             static_cast<long long>(jmax), mismatches, degenerate));
}

void criterion7() {
  struct Fixture {
    const char* name;
    TrigPoly2 t;
    LatticeStrip F;
  };
  const std::vector<Fixture> fixtures{
      {"axis", kMain1, LatticeStrip(Alpha::rational(0, 1), 1.2)},
      {"rational 1/2", three_plus_half({2, 1}), LatticeStrip(Alpha::rational(1, 2), 0.6)},
      {"rational 1/1", three_plus_half({1, 1}), LatticeStrip(Alpha::rational(1, 1), 0.9)},
  };
  bool ok = true;
  for (const Fixture& f : fixtures) {
    double prev = -1;
    for (double eps : {1e-2, 1e-3}) {
      try {
        const PropertyAResult r = factor_strip(f.t, f.F, eps);
        const VerifyReport v = verify_result(f.t, r);
        const bool monotone = prev < 0 || v.error.upper <= prev + 1e-12;
        ok = ok && v.pass() && monotone;
        info(fmt("%s eps=%.0e: containment %s, error %.3e <= bound %.3e: %s%s", f.name, eps,
                 v.containment_ok ? "ok" : "FAILED", v.error.upper, v.bound, v.error_ok ? "ok" : "FAILED",
                 monotone ? "" : ", error grew when eps shrank"));
        prev = v.error.upper;
      } catch (const std::exception& e) {
        ok = false;
        info(fmt("%s eps=%.0e: %s", f.name, eps, e.what()));
      }
    }
  }
  report(7, ok, "axis, alpha=1/2 and alpha=1/1 fixtures at eps 1e-2 and 1e-3");
}

void criterion8() {
  const Alpha liou = Alpha::real_digits(read_digits("alpha_liouville.txt"));
  const Alpha golden = Alpha::real_digits(read_digits("alpha_golden.txt"));
  const TrigPoly2 x_only = three_plus_half({1, 0});
  const TrigPoly2 y_only = three_plus_half({0, 1});
  bool ok = true;

  // Liouville: the pipeline succeeds, and the gaps along q = 10^{k!} decrease.
  try {
    const PropertyAResult r = factor_strip(x_only, LatticeStrip(liou, 0.7), 1e-3);
    const VerifyReport v = verify_result(x_only, r);
    ok = ok && v.pass();
    info(fmt("Liouville: accepted %s/%s, verified %s", r.trace.back().p.str().c_str(), r.trace.back().q.str().c_str(),
             v.pass() ? "yes" : "no"));
  } catch (const std::exception& e) {
    ok = false;
    info(std::string("Liouville pipeline failed: ") + e.what());
  }
  std::vector<double> gaps;
  for (const Convergent& c : certified_convergents(liou, 200)) {
    BigInt q = c.q;
    int zeros = 0;
    while (q > 1 && q % 10 == 0) {
      q /= 10;
      ++zeros;
    }
    int f = 1, k = 1;
    while (f < zeros) f *= ++k;
    if (q == 1 && zeros > 0 && f == zeros) gaps.push_back(amply_gap(liou, BigInt(-c.p), c.q).upper);
  }
  bool decreasing = gaps.size() >= 3;
  for (std::size_t i = 1; i < gaps.size(); ++i) decreasing = decreasing && gaps[i] < gaps[i - 1];
  std::string trace;
  for (double g : gaps) trace += fmt(" %.2e", g);
  info("Liouville gaps at q = 10^{k!}:" + trace);
  ok = ok && decreasing;

  // Golden ratio with the listed fixture t = 3 + cos 2 pi x, beta = 0.7.
  bool golden_exhausted = false;
  try {
    const PropertyAResult r = factor_strip(x_only, LatticeStrip(golden, 0.7), 1e-3, 10);
    info(fmt("golden ratio, t = 3 + cos 2 pi x, beta 0.7: accepted at %s/%s instead of exhausting the budget",
             r.trace.back().p.str().c_str(), r.trace.back().q.str().c_str()));
  } catch (const BudgetExhaustedError&) {
    golden_exhausted = true;
    info("golden ratio, t = 3 + cos 2 pi x, beta 0.7: BudgetExhausted");
  }
  ok = ok && golden_exhausted;

  // Same slope with t = 3 + cos 2 pi y, which does exhaust the budget.
  try {
    factor_strip(y_only, LatticeStrip(golden, 0.7), 1e-3, 10);
    info("golden ratio, t = 3 + cos 2 pi y: unexpectedly accepted");
  } catch (const BudgetExhaustedError& e) {
    std::string g;
    double lowest = INFINITY;
    for (const auto& tr : e.trace())
      if (tr.gap) {
        g += fmt(" %.3f", tr.gap->lower);
        lowest = std::min(lowest, tr.gap->lower);
      }
    info(fmt("golden ratio, t = 3 + cos 2 pi y, beta 0.7: BudgetExhausted, gaps%s (min %.3f)", g.c_str(), lowest));
  }
  double golden_min = INFINITY;
  for (const Convergent& c : certified_convergents(golden, 200))
    if (c.q >= 2) golden_min = std::min(golden_min, amply_gap(golden, BigInt(-c.p), c.q).lower);
  info(fmt("golden ratio: smallest certified amply gap over all certified convergents %.3f", golden_min));

  report(8, ok,
         fmt("Liouville succeeds with decreasing gaps: %s; golden-ratio fixture exhausts the budget: %s",
             decreasing ? "yes" : "no", golden_exhausted ? "yes" : "no"));
}

void criterion9() {
  bool containment_flagged = false, error_flagged = false, clean = false;
  try {
    const PropertyAResult r = factor_strip(three_plus_half({2, 1}), LatticeStrip(Alpha::rational(1, 2), 0.6), 1e-3);
    const TrigPoly2 t = three_plus_half({2, 1});
    clean = verify_result(t, r).pass();

    PropertyAResult moved = r;
    TrigPoly2::Map m = moved.s.coeffs();
    const auto it = std::prev(m.end());
    const Freq2 f = it->first;
    const cplx c = it->second;
    m.erase(it);
    m[{f.j + 1, f.k + 3}] += c;
    moved.s = TrigPoly2(m);
    containment_flagged = !verify_result(t, moved).containment_ok;

    PropertyAResult scaled = r;
    scaled.s = scaled.s * cplx(1.1);
    error_flagged = !verify_result(t, scaled).error_ok;
  } catch (const std::exception& e) {
    info(std::string("criterion 9 error: ") + e.what());
  }
  report(9, clean && containment_flagged && error_flagged,
         fmt("clean result verifies: %s; moved frequency flagged: %s; s*1.1 flagged: %s", clean ? "yes" : "no",
             containment_flagged ? "yes" : "no", error_flagged ? "yes" : "no"));
}

}  // namespace

int main() {
  const auto steps = {criterion1, criteria2and3, criterion4, criterion5, criterion6, criterion7, criterion8,
                      criterion9};
  for (auto step : steps) {
    const auto t0 = Clock::now();
    try {
      step();
      info(fmt("%.1fs", seconds_since(t0)));
    } catch (const std::exception& e) {
      std::printf("FAIL unexpected error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
