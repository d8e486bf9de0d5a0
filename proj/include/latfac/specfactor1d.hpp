#pragma once

#include <cstdint>
#include <vector>

#include "latfac/trigpoly.hpp"

namespace latfac {

struct BoundProfile {
  std::int64_t n = 0;
  double min_re = 0;  // certified lower bound of min Re t
  double sup_t = 0;   // certified upper bound of ||t||_inf
  double sup_im = 0;  // certified upper bound of ||Im t||_inf
  double l1 = 0;      // ||t^||_1
  double rho = 0;
  double sigma = 0;
  double tau = 0;
  double theta = 0;
  double c_n = 0;
  double N0 = 0;
  // B = c_n e^{theta/2} ||t||^{1/2} N0^theta.
  double B = 0;
  // B with the factor exp(2 tau sigma^{-1} e^{-N0 sigma}) = e kept, i.e. e * B.
  double B_full = 0;
  bool rho_at_boundary = false;
  bool constant = false;
};

// Throws NotPositiveReal unless the certified min Re t is positive.
BoundProfile bound_profile(const TrigPoly1& t);

// Explicit bound assembled from the individual quantities (n >= 1).
double explicit_bound(std::int64_t n, double rho, double tau, double theta, double sup_t);

struct FactorPair {
  TrigPoly1 psi_plus;   // freq in {0..n+(t)}
  TrigPoly1 psi_minus;  // freq in {-n-(t)..0}
  cplx gamma;           // psi_plus(0-coefficient) = e^{gamma/2} before normalization
};

struct FactorOptions {
  double tol = 1e-10;
  // Skip the certification of Re t > 0 (the caller guarantees it) and use the
  // principal logarithm directly.
  bool assume_positive_real = false;
  bool normalize = true;
};

// Cepstral factorization t = psi_plus * psi_minus.
FactorPair psi_factor(const TrigPoly1& t, double tol = 1e-10);
FactorPair psi_factor(const TrigPoly1& t, const FactorOptions& opts);

// Sign convention: for t > 0 the constant coefficient of psi_plus is real
// positive; otherwise Re >= 0 with ties broken by Im >= 0.
void normalize_sign(FactorPair& fp);

struct LaurentRoots {
  std::vector<cplx> roots;  // roots of z^{n-} sum_j c_j z^j
  cplx lead;                // coefficient of the top power
  std::int64_t zero_roots = 0;
};

LaurentRoots laurent_roots(const TrigPoly1& t);

struct RootFactorPair : FactorPair {
  std::vector<cplx> lambda_plus;
  std::vector<cplx> lambda_minus;
  double margin = 0;  // min | |z| - 1 | over the roots
};

// Root-product oracle. Throws RootOnCircle, NonzeroWinding.
RootFactorPair psi_factor_roots(const TrigPoly1& t);

struct MahlerMeasure {
  double quadrature = 0;
  double roots = 0;
  bool roots_available = false;
  double value() const { return roots_available ? roots : quadrature; }
};

// Both paths; throws NoConvergence if they disagree beyond 1e-8 relative.
MahlerMeasure mahler_measure(const TrigPoly1& t);
double mahler_quadrature(const TrigPoly1& t);

struct F1Check {
  std::int64_t N = 0;
  double max_excess = 0;  // max over samples of lhs - rhs
  bool pass = false;
};

struct PsiBoundReport {
  BoundProfile profile;
  Bracket sup_plus;
  Bracket sup_minus;
  bool bound_pass = false;
  std::vector<F1Check> f1;
  bool pass() const {
    bool ok = bound_pass;
    for (const auto& c : f1) ok = ok && c.pass;
    return ok;
  }
};

PsiBoundReport psi_bound_check(const TrigPoly1& t);

// t_n = e_{-n} P_n(e_1) with P_n(z) = (z - 1/n)^{2n} - 1, n odd.
TrigPoly1 example1_poly(std::int64_t n);

struct Example1Row {
  std::int64_t n = 0;
  double mahler = 0;           // M(t_n), from the roots
  double sup_t = 0;            // ||t_n||_inf, certified upper end
  double sup_im_log = 0;       // ||Im L(t_n)||_inf on the phase grid
  double log_sup_psi = 0;      // log ||Psi+(t_n)||_inf, certified upper end
  double mahler_predicted = 0; // exp(2/pi)
  double sup_t_predicted = 0;  // 1 + e^2
  double sup_im_predicted = 0; // 2 pi n
  double log_sup_psi_predicted = 0;  // 1/pi + 0.5831 n
};

// Throws InvalidInput for even or non-positive n.
Example1Row example1_row(std::int64_t n);

}  // namespace latfac
