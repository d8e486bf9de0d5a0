#pragma once

#include <cstdint>

#include "latfac/trigpoly.hpp"

namespace latfac {

// Summation kernels on the circle, all realized as frequency masks:
//   Dirichlet          D_N = sum_{|j|<=N} e_j
//   Hilbert            H_N = sum_{j=1..N} (e_j - e_{-j})
//   AnalyticPlus/Minus A_N^{+-} = (D_N +- H_N) / 2
//   HalfPlusAnalytic*  1/2 + A_N^{+-}, i.e. the indicator of +-{0..N}
enum class KernelType {
  Dirichlet,
  Hilbert,
  AnalyticPlus,
  AnalyticMinus,
  HalfPlusAnalyticPlus,
  HalfPlusAnalyticMinus,
};

struct KernelKind {
  KernelType type = KernelType::Dirichlet;
  std::int64_t order = 0;

  // Multiplier applied to the j-th Fourier coefficient.
  double mask(std::int64_t j) const;
  // The kernel as a function on the circle.
  cplx value(double x) const;
  TrigPoly1 as_poly() const;
};

const char* to_string(KernelType type);

// Convolution kernel * t, computed as the coefficientwise product with the mask.
TrigPoly1 apply_mask(const KernelKind& kind, const TrigPoly1& t);

// int_0^1 |kernel(x)| dx by 20-point Gauss-Legendre on a fine grid, split at the
// sign changes of the real and imaginary parts. Absolute accuracy ~1e-10.
double kernel_l1_norm(const KernelKind& kind);

// Upper bounds on the L1 norms for N >= 1:
//   ||D_N|| <= 1 + log(2N+1), ||A_N|| <= 3/2 + log N,
//   ||1/2 + A_N|| <= 1 + log(N+1), ||H_N|| <= 1 + 2 log N.
double kernel_l1_bound(const KernelKind& kind);

}  // namespace latfac
