#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops used by trigonometric polynomial evaluation.
//
// Complex arrays are passed split into real and imaginary planes (SoA) so
// that one AVX2 register holds four lanes of the same component. Every
// kernel has a scalar reference implementation; the dispatcher picks the
// widest variant the running CPU supports. LATFAC_SIMD=scalar in the
// environment pins the scalar path.

namespace latfac::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct ConstSplit {
  const double* re;
  const double* im;
};

struct MutSplit {
  double* re;
  double* im;
};

// out[i] = w0[i] * sum_{m < ncoef} coef[m] * z[i]^m, for i < npts.
using PowerSumFn = void (*)(ConstSplit coef, std::size_t ncoef, ConstSplit z, ConstSplit w0,
                            MutSplit out, std::size_t npts);

// out[i] = w0[i] * sum_{m < nrows} rows[m * npts + i] * z[i]^m.
// Same recurrence as PowerSumFn but the coefficient varies per point.
using PowerSumRowsFn = void (*)(ConstSplit rows, std::size_t nrows, ConstSplit z, ConstSplit w0,
                                MutSplit out, std::size_t npts);

struct KernelTable {
  Isa isa;
  PowerSumFn power_sum;
  PowerSumRowsFn power_sum_rows;
};

const KernelTable& scalar_table();
// Null when the AVX2 variants were not compiled in.
const KernelTable* avx2_table();

bool cpu_supports(Isa isa);

// The table used by the library. Chosen on first use.
const KernelTable& active();

// Overrides the active table (tests and benchmarks). Returns false and
// leaves the selection unchanged when the ISA is not available.
bool force(Isa isa);

}  // namespace latfac::simd
