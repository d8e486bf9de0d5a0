#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "latfac/error.hpp"
#include "latfac/trigpoly.hpp"

using namespace latfac;
using doctest::Approx;

namespace {

const TrigPoly1 kFiveHalves{{-1, 1.0}, {0, 2.5}, {1, 1.0}};

TrigPoly2 random_poly2(std::mt19937_64& rng, int n1, int n2) {
  std::normal_distribution<double> g;
  TrigPoly2::Map m;
  for (int j = -n1; j <= n1; ++j)
    for (int k = -n2; k <= n2; ++k) m[{j, k}] = {g(rng), g(rng)};
  return TrigPoly2(std::move(m));
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("eval1 on monomials and the five-halves polynomial") {
  CHECK(close(eval1(TrigPoly1::monomial(1), 0.25), {0.0, 1.0}, 1e-15));
  CHECK(close(eval1(kFiveHalves, 0.0), 4.5, 1e-15));
  CHECK(close(eval1(kFiveHalves, 0.5), 0.5, 1e-15));
}

TEST_CASE("mul") {
  CHECK(mul(TrigPoly1::monomial(1), TrigPoly1::monomial(-1)) == TrigPoly1::constant(1.0));
  const TrigPoly1 a{{0, 1.0}, {1, 1.0}};
  const TrigPoly1 b{{0, 1.0}, {-1, 1.0}};
  CHECK(mul(a, b) == TrigPoly1{{-1, 1.0}, {0, 2.0}, {1, 1.0}});
  CHECK(mul(TrigPoly2::monomial(1, 0), TrigPoly2::monomial(0, 1)) == TrigPoly2::monomial(1, 1));
}

TEST_CASE("mod_squared") {
  const TrigPoly1 s{{0, 1.0}, {1, 0.5}};
  CHECK(mod_squared(s) == TrigPoly1{{-1, 0.5}, {0, 1.25}, {1, 0.5}});
  CHECK(mod_squared(TrigPoly2::monomial(3, 7)) == TrigPoly2::constant(1.0));
  CHECK(mod_squared(TrigPoly2{}).is_zero());
}

TEST_CASE("certified sup norm brackets") {
  const Bracket a = sup_norm_certified(TrigPoly1::monomial(5), 1e-9);
  CHECK(a.contains(1.0));
  CHECK(a.width() <= 1e-9);
  CHECK(sup_norm_certified(kFiveHalves, 1e-6).contains(4.5));
  const TrigPoly1 d1{{-1, 1.0}, {0, 1.0}, {1, 1.0}};
  CHECK(sup_norm_certified(d1, 1e-6).contains(3.0));
}

TEST_CASE("certified min Re brackets") {
  CHECK(min_re_certified(kFiveHalves, 1e-6).contains(0.5));
  CHECK(min_re_certified(TrigPoly1::constant({2.0, 7.0}), 1e-6).contains(2.0));
  CHECK(min_re_certified(TrigPoly1{{0, 3.0}, {1, 1.0}}, 1e-6).contains(2.0));
}

TEST_CASE("certified brackets survive dense sampling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3; ++trial) {
    const TrigPoly2 t = random_poly2(rng, 3, 2);
    const double tol = 1e-6;
    const Bracket sup = sup_norm_certified(t, tol);
    const Bracket mn = min_re_certified(t, tol);
    CHECK(sup.width() <= tol);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double seen_max = 0, seen_min = INFINITY;
    for (int i = 0; i < 100000; ++i) {
      const cplx v = eval2(t, u(rng), u(rng));
      seen_max = std::max(seen_max, std::abs(v));
      seen_min = std::min(seen_min, v.real());
    }
    CHECK(seen_max <= sup.upper + tol);
    CHECK(seen_min >= mn.lower - tol);
  }
}

TEST_CASE("l1_coeff_norm") {
  CHECK(l1_coeff_norm(kFiveHalves) == Approx(4.5));
  CHECK(l1_coeff_norm(TrigPoly1{}) == 0.0);
  CHECK(l1_coeff_norm(TrigPoly1{{1, 1.0}, {-1, -1.0}}) == Approx(2.0));
}

TEST_CASE("samples round trip") {
  const TrigPoly1 e3 = TrigPoly1::monomial(3);
  const TrigPoly1 back = from_samples(to_samples(e3, 16), {3, 3});
  CHECK(close(back.coeff(3), 1.0, 1e-15));
  const TrigPoly1 t = from_samples(to_samples(kFiveHalves, 8), FreqWindow::of(kFiveHalves));
  for (std::int64_t j = -1; j <= 1; ++j) CHECK(close(t.coeff(j), kFiveHalves.coeff(j), 1e-15));
  SampledCircleFn ones{std::vector<cplx>(8, 1.0)};
  CHECK(close(from_samples(ones, {0, 0}).coeff(0), 1.0, 1e-15));
  CHECK_THROWS_AS(from_samples(ones, {-4, 4}), Error);
}

TEST_CASE("slice_gamma") {
  const TrigPoly1 a = slice_gamma(TrigPoly2::monomial(1, 1), {0.0, 1.0});
  CHECK(close(a.coeff(1), {0.0, 1.0}, 1e-15));
  const TrigPoly1 b = slice_gamma(TrigPoly2{{{2, 0}, 1.0}, {{0, 3}, 1.0}}, 1.0);
  CHECK(close(b.coeff(0), 1.0, 1e-15));
  CHECK(close(b.coeff(3), 1.0, 1e-15));
  std::mt19937_64 rng(5);
  const TrigPoly2 t = random_poly2(rng, 3, 3);
  const TrigPoly1 s = slice_gamma(t, std::polar(1.0, 2.0 * std::numbers::pi * 0.3));
  for (double y : {0.0, 0.17, 0.5, 0.91}) CHECK(close(eval1(s, y), eval2(t, 0.3, y), 1e-12));
  CHECK_THROWS_AS(slice_gamma(t, 0.0), Error);
}

TEST_CASE("canonical zeros are dropped and real-valuedness is detected") {
  TrigPoly1 t{{0, 1.0}, {4, 1e-301}};
  CHECK(t.size() == 1);
  CHECK(is_real_valued(kFiveHalves));
  CHECK_FALSE(is_real_valued(TrigPoly1{{1, 1.0}}));
  CHECK(swap_variables(TrigPoly2::monomial(2, -1)) == TrigPoly2::monomial(-1, 2));
}
