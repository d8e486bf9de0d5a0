#pragma once

#include <cstdint>
#include <vector>

#include "latfac/trigpoly.hpp"

namespace latfac {

// Random real-valued positive trigonometric polynomials. Coefficient c_j has a
// uniform phase and magnitude uniform in [0, 1/|j|]; c_0 is then set so that
// min t is a random value in [min_lo, min_hi], certified. Same seed, same corpus.
struct CorpusOptions {
  std::uint64_t seed = 1;
  std::size_t count = 200;
  std::int64_t max_n1 = 32;
  std::int64_t max_n2 = 0;  // 0 means one variable
  double min_lo = 0.1;
  double min_hi = 1.0;
};

std::vector<TrigPoly1> corpus1d(const CorpusOptions& opts);
std::vector<TrigPoly2> corpus2d(const CorpusOptions& opts);

}  // namespace latfac
