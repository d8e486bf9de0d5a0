#pragma once

#include <complex>
#include <span>
#include <vector>

namespace latfac::fft {

using cplx = std::complex<double>;

// X[k] = sum_m x[m] exp(-2 pi i k m / M). Unnormalized.
std::vector<cplx> forward(std::span<const cplx> x);

// x[m] = sum_k X[k] exp(+2 pi i k m / M). Unnormalized.
std::vector<cplx> backward(std::span<const cplx> x);

inline bool is_power_of_two(std::size_t m) { return m != 0 && (m & (m - 1)) == 0; }

std::size_t next_power_of_two(std::size_t m);

}  // namespace latfac::fft
