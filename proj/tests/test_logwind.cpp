#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latfac/error.hpp"
#include "latfac/fft.hpp"
#include "latfac/logwind.hpp"

using namespace latfac;
using doctest::Approx;

namespace {
const TrigPoly1 kFiveHalves{{-1, 1.0}, {0, 2.5}, {1, 1.0}};
}

TEST_CASE("winding numbers") {
  CHECK(winding_number(TrigPoly1::monomial(3)) == 3);
  CHECK(winding_number(TrigPoly1{{0, 3.0}, {1, 1.0}}) == 0);
  CHECK(winding_number(TrigPoly1{{-2, 2.0}, {-1, 1.0}}) == -2);
  CHECK_THROWS_AS(winding_number(TrigPoly1{{0, 1.0}, {1, 1.0}}), Error);
}

TEST_CASE("branch_log") {
  const CirclePhaseLog c = branch_log(TrigPoly1::constant(2.0));
  for (const cplx& v : c.log_values) CHECK(std::abs(v - std::log(2.0)) < 1e-15);
  const CirclePhaseLog f = branch_log(kFiveHalves);
  CHECK(std::abs(f.log_values[0] - std::log(4.5)) < 1e-14);
  try {
    branch_log(TrigPoly1::monomial(1));
    FAIL("expected NonzeroWinding");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonzeroWinding);
  }
}

TEST_CASE("branch_log is continuous and exponentiates back") {
  const TrigPoly1 t{{-1, {0.3, 0.2}}, {0, 2.0}, {2, {-0.4, 0.7}}};
  const CirclePhaseLog L = branch_log(t);
  const std::size_t M = L.grid_size();
  for (std::size_t m = 0; m < M; ++m) {
    const double x = static_cast<double>(m) / static_cast<double>(M);
    CHECK(std::abs(std::exp(L.log_values[m]) - eval1(t, x)) < 1e-12);
    const cplx next = L.log_values[(m + 1) % M];
    CHECK(std::abs(next.imag() - L.log_values[m].imag()) < 1.0);
  }
}

TEST_CASE("analytic projections") {
  const TrigPoly1 c = analytic_projection(principal_log(TrigPoly1::constant(std::exp(2.0)), 64), Side::Plus, 4);
  CHECK(c.size() == 1);
  CHECK(std::abs(c.coeff(0) - 1.0) < 1e-14);

  // Dense FFT of log(2.5 + 2 cos 2 pi x) as the oracle.
  const std::size_t M = 4096;
  std::vector<cplx> v(M);
  for (std::size_t m = 0; m < M; ++m)
    v[m] = std::log(2.5 + 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(m) / M));
  const auto spec = fft::forward(v);
  const TrigPoly1 plus = analytic_projection(kFiveHalves, Side::Plus, 4);
  const TrigPoly1 minus = analytic_projection(kFiveHalves, Side::Minus, 4);
  CHECK(std::abs(plus.coeff(0) - 0.5 * spec[0] / double(M)) < 1e-12);
  for (std::size_t j = 1; j <= 4; ++j) {
    CHECK(std::abs(plus.coeff(static_cast<std::int64_t>(j)) - spec[j] / double(M)) < 1e-12);
    CHECK(std::abs(minus.coeff(-static_cast<std::int64_t>(j)) - spec[M - j] / double(M)) < 1e-12);
  }
  // The two halves add up to the full series on the window.
  const TrigPoly1 full = plus + minus;
  CHECK(std::abs(full.coeff(0) - spec[0] / double(M)) < 1e-12);
  CHECK(full.coeff(5) == cplx(0.0));
}

TEST_CASE("min modulus and phase grid") {
  const Bracket b = min_modulus_certified(kFiveHalves);
  CHECK(b.contains(0.5, 1e-12));
  CHECK(phase_grid_size(kFiveHalves, b.lower) >= 64);
}
