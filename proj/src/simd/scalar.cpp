#include "latfac/simd/kernels.hpp"

namespace latfac::simd {
namespace {

void power_sum_scalar(ConstSplit coef, std::size_t ncoef, ConstSplit z, ConstSplit w0, MutSplit out,
                      std::size_t npts) {
  for (std::size_t i = 0; i < npts; ++i) {
    const double zr = z.re[i];
    const double zi = z.im[i];
    double wr = w0.re[i];
    double wi = w0.im[i];
    double ar = 0.0;
    double ai = 0.0;
    for (std::size_t m = 0; m < ncoef; ++m) {
      const double cr = coef.re[m];
      const double ci = coef.im[m];
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

void power_sum_rows_scalar(ConstSplit rows, std::size_t nrows, ConstSplit z, ConstSplit w0,
                           MutSplit out, std::size_t npts) {
  for (std::size_t i = 0; i < npts; ++i) {
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

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, &power_sum_scalar, &power_sum_rows_scalar};
  return table;
}

}  // namespace latfac::simd
