#include <atomic>
#include <cstdlib>
#include <string>

#include "latfac/simd/kernels.hpp"

namespace latfac::simd {

#ifndef LATFAC_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(LATFAC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

const KernelTable* select_default() {
  if (const char* env = std::getenv("LATFAC_SIMD")) {
    if (std::string(env) == "scalar") return &scalar_table();
  }
  if (cpu_supports(Isa::Avx2) && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{select_default()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool force(Isa isa) {
  const KernelTable* table = nullptr;
  if (isa == Isa::Scalar) {
    table = &scalar_table();
  } else if (cpu_supports(isa)) {
    table = avx2_table();
  }
  if (table == nullptr) return false;
  slot().store(table, std::memory_order_release);
  return true;
}

}  // namespace latfac::simd
