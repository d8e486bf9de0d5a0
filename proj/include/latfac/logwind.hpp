#pragma once

#include <cstdint>
#include <vector>

#include "latfac/trigpoly.hpp"

namespace latfac {

enum class Side { Plus, Minus };

// Sampled continuous logarithm L(f) on x = m/M.
//   real part  = log|f|
//   imag part  = argument unwrapped from the principal value at x = 0
// so that exp(L) = f at every grid point and L[0] = base_branch.
struct CirclePhaseLog {
  std::vector<cplx> log_values;
  cplx base_branch;

  std::size_t grid_size() const noexcept { return log_values.size(); }
};

// Certified enclosure of min |f| over the circle.
Bracket min_modulus_certified(const TrigPoly1& f);

// Grid size that resolves the phase of f: with h = 1/M and Lipschitz constant
// 2 pi n ||f^||_1, the samples at M points cannot skip a half turn.
std::size_t phase_grid_size(const TrigPoly1& f, double min_modulus);

// W(f) = (1/2 pi) * sum_m arg(f((m+1)/M) / f(m/M)). Throws NotInvertible when
// the certified min |f| bracket touches zero.
std::int64_t winding_number(const TrigPoly1& f);

// Throws NonzeroWinding unless W(f) = 0. The grid is at least min_grid.
CirclePhaseLog branch_log(const TrigPoly1& f, std::size_t min_grid = 0);

// Principal log sampled on M points; valid as L(f) whenever Re f > 0.
CirclePhaseLog principal_log(const TrigPoly1& f, std::size_t M);

// c + sum_{m < steps} log(f((m+1) x / steps) / f(m x / steps)) with exp(c) = f(0).
cplx radial_log(const TrigPoly1& f, double x, std::size_t steps);

// A_inf^{+-} applied to the sampled log, truncated to |j| <= N:
// 1/2 c(0) + sum_{j=1..N} c(+-j) e_{+-j}, from the discrete Fourier coefficients.
TrigPoly1 analytic_projection(const CirclePhaseLog& L, Side side, std::int64_t N);

// Same, recomputing the log on doubled grids until the output coefficients
// move by at most tol (relative to their l1 norm).
TrigPoly1 analytic_projection(const TrigPoly1& f, Side side, std::int64_t N, double tol = 1e-11);

}  // namespace latfac
