#include "latfac/corpus.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "latfac/error.hpp"

namespace latfac {
namespace {

cplx random_coeff(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> mag(0.0, scale);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  return std::polar(mag(rng), phase(rng));
}

// Shift the constant term so that the certified minimum lands on target.
template <class Poly>
Poly place_minimum(const Poly& t, double target, const Poly& one) {
  const double tol = 1e-9 * std::max(1.0, l1_coeff_norm(t));
  // min(t + c) >= lower + c = target, and is within tol of it.
  return t + one * cplx(target - min_re_certified(t, tol).lower);
}

}  // namespace

std::vector<TrigPoly1> corpus1d(const CorpusOptions& opts) {
  if (opts.max_n1 < 0 || !(opts.min_lo > 0) || opts.min_hi < opts.min_lo)
    throw Error(ErrorCode::InvalidInput, "corpus1d: bad options");
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::int64_t> deg(1, std::max<std::int64_t>(1, opts.max_n1));
  std::uniform_real_distribution<double> target(opts.min_lo, opts.min_hi);
  std::vector<TrigPoly1> out;
  for (std::size_t i = 0; i < opts.count; ++i) {
    const std::int64_t n = opts.max_n1 == 0 ? 0 : deg(rng);
    TrigPoly1::Map m;
    for (std::int64_t j = 1; j <= n; ++j) {
      const cplx c = random_coeff(rng, 1.0 / static_cast<double>(j));
      m[j] = c;
      m[-j] = std::conj(c);
    }
    TrigPoly1 t(std::move(m));
    if (t.is_zero()) {
      out.push_back(TrigPoly1::constant(target(rng)));
      continue;
    }
    out.push_back(place_minimum(t, target(rng), TrigPoly1::constant(1.0)));
  }
  return out;
}

std::vector<TrigPoly2> corpus2d(const CorpusOptions& opts) {
  if (opts.max_n1 < 0 || opts.max_n2 < 0 || !(opts.min_lo > 0) || opts.min_hi < opts.min_lo)
    throw Error(ErrorCode::InvalidInput, "corpus2d: bad options");
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::int64_t> d1(0, opts.max_n1), d2(0, opts.max_n2);
  std::uniform_real_distribution<double> target(opts.min_lo, opts.min_hi);
  std::vector<TrigPoly2> out;
  for (std::size_t i = 0; i < opts.count; ++i) {
    std::int64_t n1 = d1(rng), n2 = d2(rng);
    if (n1 == 0 && n2 == 0) n1 = std::min<std::int64_t>(1, opts.max_n1);
    TrigPoly2::Map m;
    // One representative of each {f, -f} pair: j > 0, or j = 0 and k > 0.
    for (std::int64_t j = 0; j <= n1; ++j)
      for (std::int64_t k = -n2; k <= n2; ++k) {
        if (j == 0 && k <= 0) continue;
        const cplx c = random_coeff(rng, 1.0 / static_cast<double>(1 + j + std::abs(k)));
        m[{j, k}] = c;
        m[{-j, -k}] = std::conj(c);
      }
    TrigPoly2 t(std::move(m));
    if (t.is_zero()) {
      out.push_back(TrigPoly2::constant(target(rng)));
      continue;
    }
    out.push_back(place_minimum(t, target(rng), TrigPoly2::constant(1.0)));
  }
  return out;
}

}  // namespace latfac
