#pragma once

#include <cstdint>
#include <vector>

#include "latfac/logwind.hpp"
#include "latfac/specfactor1d.hpp"
#include "latfac/trigpoly.hpp"

namespace latfac {

// Factor pairs of the slices y -> t(m/M, y), m = 0..M-1.
struct SlicedFactor {
  std::vector<FactorPair> slices;
  std::int64_t band = 0;        // n2+(t)
  std::int64_t band_minus = 0;  // n2-(t)
  double offset = 0;            // slice m sits at x = (m + offset)/M

  std::size_t grid_size() const noexcept { return slices.size(); }
};

struct SliceOptions {
  double tol = 0;  // per-slice factorization tolerance; 0 means 1e-11 ||t^||_1
  // Evaluate the slices at (m + offset)/M instead of m/M.
  double offset = 0;
  // Skip the positivity check; the caller certified min Re t > 0 already
  // (for instance on t before an SL2(Z) change of variables).
  bool positivity_known = false;
};

// Throws NotPositiveReal unless min Re t is certified positive.
SlicedFactor s_factor(const TrigPoly2& t, std::size_t M, double tol = 0);
SlicedFactor s_factor(const TrigPoly2& t, std::size_t M, const SliceOptions& opts);

// Discrete x-transform of the slice coefficients truncated to |j| <= N.
// Throws AliasRisk when M <= 2N.
TrigPoly2 s_n_approx(const SlicedFactor& sf, std::int64_t N, Side side = Side::Plus);

struct ConvergenceBudget {
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double eps = 0;
  double min_t = 0;  // certified lower bound of min Re t
  double sup_t = 0;  // certified upper bound of ||t||_inf
  double sup_im = 0;
  double l1 = 0;
  double rho = 0;
  double tau = 0;
  double theta = 0;
  double sigma1 = 0;
  // Explicit slice bound for Psi^+(Gamma_z t), z in the annulus of width sigma1:
  // the 1D bound evaluated with rho/2e, tau + log 2, theta and ||t|| + min t/2.
  double slice_bound = 0;
  // zeta = slice_bound / max(1, n2)^{pi/2}.
  double zeta = 0;
  double N_eps = 0;

  std::int64_t N() const;
  // Right side of the tail estimate 2 zeta n2^{pi/2} sigma1^{-1} e^{-N sigma1}.
  double envelope(std::int64_t N) const;
};

// Certified extremes of t on the torus. They are unchanged by SL2(Z) changes
// of variables, so a sheared polynomial can reuse those of the original.
struct TorusExtrema {
  double min_t = 0;   // lower bound for min Re t
  double sup_t = 0;   // upper bound for ||t||_inf
  double sup_im = 0;  // upper bound for ||Im t||_inf
};
TorusExtrema torus_extrema(const TrigPoly2& t);

ConvergenceBudget convergence_budget(const TrigPoly2& t, double eps);
ConvergenceBudget convergence_budget(const TrigPoly2& t, double eps, const TorusExtrema& ext);

// Next power of two >= 8 max(4 n1, N + 1).
std::size_t default_slice_count(const TrigPoly2& t, std::int64_t N);

struct EnvelopeViolation {
  std::int64_t N = 0;
  double measured = 0;
  double envelope = 0;
};

struct SconvReport {
  ConvergenceBudget budget;
  std::int64_t N = 0;
  std::size_t M = 0;
  double distance = 0;          // max over sampled x of sup_y |S+ - S_N+| (upper bound per slice)
  double distance_sampled = 0;  // same, from sampled y
  bool distance_pass = false;
  std::int64_t envelope_checked_up_to = 0;
  std::vector<EnvelopeViolation> envelope_violations;
  bool gamma1_pass = false;
  double gamma1_min_re = 0;  // min over sampled z of certified min Re Gamma_z t
  double gamma1_sup = 0;     // max over sampled z of certified ||Gamma_z t||_inf
  bool gamma_profile_pass = false;
  double gamma_rho_ratio = 0;  // min over z of rho(Gamma_z t) / (rho(t) / 2e)
  double gamma_tau_excess = 0; // max over z of tau(Gamma_z t) - tau(t) - log 2
  bool pass() const { return distance_pass && envelope_violations.empty() && gamma1_pass; }
};

struct SconvOptions {
  // Number of x samples per annulus radius for the Gamma checks.
  std::size_t gamma_samples = 32;
  bool check_envelope = true;
  bool check_gamma = true;
};

SconvReport verify_sconv(const TrigPoly2& t, double eps, const SconvOptions& opts = {});

// sup_y |S+(x, y) - S_N+(x, y)| over the off-grid slices x = (m + 1/2)/M, for
// the given list of N, using the coefficient tail in y (upper bound) and dense
// y samples (lower bound). Requires M > 2 max(Ns).
struct DistanceSample {
  std::int64_t N = 0;
  double upper = 0;
  double sampled = 0;
};
std::vector<DistanceSample> measure_distances(const TrigPoly2& t, std::size_t M, const std::vector<std::int64_t>& Ns,
                                              double tol = 0);

}  // namespace latfac
