#include "latfac/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace latfac::fft {
namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, sign) and never destroyed.
fftw_plan plan_for(std::size_t n, int sign) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
  std::lock_guard lock(mutex);
  auto it = plans.find({n, sign});
  if (it != plans.end()) return it->second;
  std::vector<cplx> in(n), out(n);
  fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()), sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans.emplace(std::make_pair(n, sign), plan);
  return plan;
}

std::vector<cplx> run(std::span<const cplx> x, int sign) {
  std::vector<cplx> in(x.begin(), x.end());
  std::vector<cplx> out(x.size());
  if (x.empty()) return out;
  fftw_execute_dft(plan_for(x.size(), sign), reinterpret_cast<fftw_complex*>(in.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return run(x, FFTW_FORWARD); }

std::vector<cplx> backward(std::span<const cplx> x) { return run(x, FFTW_BACKWARD); }

std::size_t next_power_of_two(std::size_t m) {
  std::size_t p = 1;
  while (p < m) p <<= 1;
  return p;
}

}  // namespace latfac::fft
