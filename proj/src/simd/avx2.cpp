// AVX2 + FMA variants. Four evaluation points per register; the tail
// falls back to the scalar recurrence.

#include <immintrin.h>

#include "latfac/simd/kernels.hpp"

namespace latfac::simd {
namespace {

constexpr std::size_t kLanes = 4;

// (ar, ai) += (cr, ci) * (wr, wi)
inline void cmul_acc(__m256d cr, __m256d ci, __m256d wr, __m256d wi, __m256d& ar, __m256d& ai) {
  ar = _mm256_fmadd_pd(cr, wr, ar);
  ar = _mm256_fnmadd_pd(ci, wi, ar);
  ai = _mm256_fmadd_pd(cr, wi, ai);
  ai = _mm256_fmadd_pd(ci, wr, ai);
}

// (wr, wi) *= (zr, zi)
inline void cmul_inplace(__m256d zr, __m256d zi, __m256d& wr, __m256d& wi) {
  const __m256d nr = _mm256_fmsub_pd(wr, zr, _mm256_mul_pd(wi, zi));
  wi = _mm256_fmadd_pd(wr, zi, _mm256_mul_pd(wi, zr));
  wr = nr;
}

void power_sum_avx2(ConstSplit coef, std::size_t ncoef, ConstSplit z, ConstSplit w0, MutSplit out,
                    std::size_t npts) {
  std::size_t i = 0;
  for (; i + kLanes <= npts; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(z.re + i);
    const __m256d zi = _mm256_loadu_pd(z.im + i);
    __m256d wr = _mm256_loadu_pd(w0.re + i);
    __m256d wi = _mm256_loadu_pd(w0.im + i);
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t m = 0; m < ncoef; ++m) {
      cmul_acc(_mm256_set1_pd(coef.re[m]), _mm256_set1_pd(coef.im[m]), wr, wi, ar, ai);
      cmul_inplace(zr, zi, wr, wi);
    }
    _mm256_storeu_pd(out.re + i, ar);
    _mm256_storeu_pd(out.im + i, ai);
  }
  if (i < npts) {
    const ConstSplit zt{z.re + i, z.im + i};
    const ConstSplit wt{w0.re + i, w0.im + i};
    scalar_table().power_sum(coef, ncoef, zt, wt, MutSplit{out.re + i, out.im + i}, npts - i);
  }
}

void power_sum_rows_avx2(ConstSplit rows, std::size_t nrows, ConstSplit z, ConstSplit w0,
                         MutSplit out, std::size_t npts) {
  std::size_t i = 0;
  for (; i + kLanes <= npts; i += kLanes) {
    const __m256d zr = _mm256_loadu_pd(z.re + i);
    const __m256d zi = _mm256_loadu_pd(z.im + i);
    __m256d wr = _mm256_loadu_pd(w0.re + i);
    __m256d wi = _mm256_loadu_pd(w0.im + i);
    __m256d ar = _mm256_setzero_pd();
    __m256d ai = _mm256_setzero_pd();
    for (std::size_t m = 0; m < nrows; ++m) {
      const __m256d cr = _mm256_loadu_pd(rows.re + m * npts + i);
      const __m256d ci = _mm256_loadu_pd(rows.im + m * npts + i);
      cmul_acc(cr, ci, wr, wi, ar, ai);
      cmul_inplace(zr, zi, wr, wi);
    }
    _mm256_storeu_pd(out.re + i, ar);
    _mm256_storeu_pd(out.im + i, ai);
  }
  for (; i < npts; ++i) {
    const double zr = z.re[i];
    const double zi = z.im[i];
    double wr = w0.re[i];
    double wi = w0.im[i];
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t m = 0; m < nrows; ++m) {
      const double cr = rows.re[m * npts + i];
      const double ci = rows.im[m * npts + i];
      ar += cr * wr - ci * wi;
      ai += cr * wi + ci * wr;
      const double nr = wr * zr - wi * zi;
      wi = wr * zi + wi * zr;
      wr = nr;
    }
    out.re[i] = ar;
    out.im[i] = ai;
  }
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2, &power_sum_avx2, &power_sum_rows_avx2};
  return &table;
}

}  // namespace latfac::simd
