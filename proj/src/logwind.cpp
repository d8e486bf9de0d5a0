#include "latfac/logwind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "latfac/error.hpp"
#include "latfac/fft.hpp"

namespace latfac {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t initial_grid(const TrigPoly1& f) {
  const auto n = static_cast<std::size_t>(f.degree());
  return fft::next_power_of_two(std::max<std::size_t>(64, 8 * (n + 1)));
}

// Sum of principal arguments of consecutive sample ratios, in turns.
double total_turns(const std::vector<cplx>& v) {
  double acc = 0.0;
  for (std::size_t m = 0; m < v.size(); ++m) acc += std::arg(v[(m + 1) % v.size()] / v[m]);
  return acc / kTwoPi;
}

CirclePhaseLog unwrap(const std::vector<cplx>& v) {
  CirclePhaseLog out;
  out.log_values.resize(v.size());
  out.base_branch = std::log(v[0]);
  out.log_values[0] = out.base_branch;
  double phase = out.base_branch.imag();
  for (std::size_t m = 1; m < v.size(); ++m) {
    const double step = std::arg(v[m] / v[m - 1]);
    if (!(std::abs(step) < std::numbers::pi))
      throw Error(ErrorCode::NoConvergence, "branch_log: phase jump of pi between samples");
    phase += step;
    out.log_values[m] = {std::log(std::abs(v[m])), phase};
  }
  return out;
}

}  // namespace

Bracket min_modulus_certified(const TrigPoly1& f) {
  if (f.is_zero()) return {0.0, 0.0};
  const TrigPoly1 sq = mod_squared(f);
  const double scale = l1_coeff_norm(sq);
  double tol = 0.5 * scale;
  double last_upper = std::numeric_limits<double>::infinity();
  for (;;) {
    const Bracket b = min_re_certified(sq, tol);
    if (b.lower > 0) return {std::sqrt(b.lower), std::sqrt(std::max(b.lower, b.upper))};
    // Below the rounding floor of the evaluation the bracket stops shrinking.
    if (b.upper <= 1e-12 * scale || !(b.upper < last_upper))
      return {0.0, std::sqrt(std::max(0.0, b.upper))};
    last_upper = b.upper;
    tol = 0.25 * b.upper;
  }
}

std::size_t phase_grid_size(const TrigPoly1& f, double min_modulus) {
  const double lip = kTwoPi * static_cast<double>(f.degree()) * l1_coeff_norm(f);
  std::size_t M = initial_grid(f);
  const double need = lip / min_modulus;
  while (static_cast<double>(M) <= need) {
    if (M >= max_grid()) throw Error(ErrorCode::NoConvergence, "phase grid exceeds the grid cap");
    M *= 2;
  }
  return M;
}

std::int64_t winding_number(const TrigPoly1& f) {
  const Bracket m = min_modulus_certified(f);
  if (!(m.lower > 0)) throw Error(ErrorCode::NotInvertible, "winding_number: f vanishes on the circle");
  std::size_t M = phase_grid_size(f, m.lower);
  double prev = total_turns(to_samples(f, M).values);
  for (;;) {
    if (M >= max_grid()) throw Error(ErrorCode::NoConvergence, "winding_number: grid cap reached");
    M *= 2;
    const double cur = total_turns(to_samples(f, M).values);
    const double w = std::round(cur);
    if (std::round(prev) == w && std::abs(cur - w) < 0.1) return static_cast<std::int64_t>(w);
    prev = cur;
  }
}

CirclePhaseLog branch_log(const TrigPoly1& f, std::size_t min_grid) {
  const std::int64_t w = winding_number(f);
  if (w != 0) throw Error(ErrorCode::NonzeroWinding, "branch_log: winding number is " + std::to_string(w));
  const Bracket m = min_modulus_certified(f);
  std::size_t M = std::max(phase_grid_size(f, m.lower), fft::next_power_of_two(std::max<std::size_t>(min_grid, 1)));
  return unwrap(to_samples(f, M).values);
}

CirclePhaseLog principal_log(const TrigPoly1& f, std::size_t M) {
  if (!fft::is_power_of_two(M)) throw Error(ErrorCode::InvalidInput, "grid size must be a power of two");
  const auto v = to_samples(f, M).values;
  CirclePhaseLog out;
  out.log_values.resize(M);
  for (std::size_t m = 0; m < M; ++m) out.log_values[m] = std::log(v[m]);
  out.base_branch = out.log_values[0];
  return out;
}

cplx radial_log(const TrigPoly1& f, double x, std::size_t steps) {
  if (steps == 0) throw Error(ErrorCode::InvalidInput, "radial_log: steps must be positive");
  cplx prev = f(0.0);
  cplx acc = std::log(prev);
  for (std::size_t m = 1; m <= steps; ++m) {
    const cplx cur = f(x * static_cast<double>(m) / static_cast<double>(steps));
    acc += std::log(cur / prev);
    prev = cur;
  }
  return acc;
}

TrigPoly1 analytic_projection(const CirclePhaseLog& L, Side side, std::int64_t N) {
  const std::size_t M = L.grid_size();
  if (!fft::is_power_of_two(M)) throw Error(ErrorCode::InvalidInput, "log grid size must be a power of two");
  if (N < 0) throw Error(ErrorCode::InvalidInput, "analytic_projection: N must be >= 0");
  const auto spec = fft::forward(L.log_values);
  const double inv = 1.0 / static_cast<double>(M);
  const auto top = std::min<std::int64_t>(N, static_cast<std::int64_t>(M / 2) - 1);
  TrigPoly1::Map m;
  m.emplace(0, 0.5 * spec[0] * inv);
  for (std::int64_t j = 1; j <= top; ++j) {
    const std::size_t idx = side == Side::Plus ? static_cast<std::size_t>(j) : M - static_cast<std::size_t>(j);
    m.emplace(side == Side::Plus ? j : -j, spec[idx] * inv);
  }
  return TrigPoly1(std::move(m));
}

TrigPoly1 analytic_projection(const TrigPoly1& f, Side side, std::int64_t N, double tol) {
  CirclePhaseLog L = branch_log(f, 4 * static_cast<std::size_t>(std::max<std::int64_t>(N, 0) + 1));
  TrigPoly1 prev = analytic_projection(L, side, N);
  std::size_t M = L.grid_size();
  for (;;) {
    if (M >= max_grid()) throw Error(ErrorCode::NoConvergence, "analytic_projection: grid cap reached");
    M *= 2;
    L = branch_log(f, M);
    TrigPoly1 cur = analytic_projection(L, side, N);
    const double diff = l1_coeff_norm(cur - prev);
    if (diff <= tol * std::max(1.0, l1_coeff_norm(cur))) return cur;
    prev = std::move(cur);
  }
}

}  // namespace latfac
