#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latfac/error.hpp"
#include "latfac/specfactor2d.hpp"

using namespace latfac;
using doctest::Approx;

namespace {

// 5/2 + cos 2 pi y
const TrigPoly2 kYOnly{{{0, -1}, 0.5}, {{0, 0}, 2.5}, {{0, 1}, 0.5}};
// 3 + cos 2 pi x cos 2 pi y
const TrigPoly2 kCosCos{{{-1, -1}, 0.25}, {{-1, 1}, 0.25}, {{0, 0}, 3.0}, {{1, -1}, 0.25}, {{1, 1}, 0.25}};
// 3 + 0.5 cos 2 pi x + 0.5 cos 2 pi y
const TrigPoly2 kMain1{{{-1, 0}, 0.25}, {{0, -1}, 0.25}, {{0, 0}, 3.0}, {{0, 1}, 0.25}, {{1, 0}, 0.25}};

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("slices of an x-independent polynomial") {
  const FactorPair oracle = psi_factor(TrigPoly1{{-1, 0.5}, {0, 2.5}, {1, 0.5}});
  const SlicedFactor sf = s_factor(kYOnly, 16);
  REQUIRE(sf.grid_size() == 16);
  for (const FactorPair& f : sf.slices)
    for (std::int64_t k = 0; k <= 1; ++k) CHECK(close(f.psi_plus.coeff(k), oracle.psi_plus.coeff(k), 1e-10));
  for (std::int64_t N : {0, 3, 7}) {
    const TrigPoly2 s = s_n_approx(sf, N);
    CHECK(s.n1() == 0);
    for (std::int64_t k = 0; k <= 1; ++k) CHECK(close(s.coeff(0, k), oracle.psi_plus.coeff(k), 1e-10));
  }
}

TEST_CASE("constant slices") {
  const SlicedFactor sf = s_factor(TrigPoly2::constant(4.0), 8);
  for (const FactorPair& f : sf.slices) CHECK(close(f.psi_plus.coeff(0), 2.0, 1e-14));
}

TEST_CASE("slice at x = 0 of 3 + cos cos") {
  const SlicedFactor sf = s_factor(kCosCos, 32);
  const FactorPair oracle = psi_factor(TrigPoly1{{-1, 0.5}, {0, 3.0}, {1, 0.5}});
  for (std::int64_t k = 0; k <= 1; ++k) CHECK(close(sf.slices[0].psi_plus.coeff(k), oracle.psi_plus.coeff(k), 1e-10));

  const TrigPoly2 s0 = s_n_approx(sf, 0);
  for (std::int64_t k = 0; k <= 1; ++k) {
    cplx mean = 0.0;
    for (const FactorPair& f : sf.slices) mean += f.psi_plus.coeff(k);
    mean /= static_cast<double>(sf.grid_size());
    CHECK(close(s0.coeff(0, k), mean, 1e-12));
  }
  CHECK_THROWS_AS(s_n_approx(sf, 16), Error);
}

TEST_CASE("non-positive input is rejected") {
  const TrigPoly2 t{{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{-1, 0}, 1.0}};
  try {
    s_factor(t, 8);
    FAIL("expected NotPositiveReal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPositiveReal);
  }
}

TEST_CASE("convergence budget") {
  const ConvergenceBudget x = convergence_budget(kYOnly, 1e-3);
  CHECK(x.N_eps == 0.0);
  CHECK(x.N() == 0);

  const ConvergenceBudget b = convergence_budget(kMain1, 1e-3);
  CHECK(b.n1 == 1);
  CHECK(b.n2 == 1);
  CHECK(b.rho == Approx(2.0 / (2.0 * std::numbers::e * 4.0)).epsilon(1e-6));
  CHECK(b.sigma1 == Approx(b.rho));
  CHECK(b.N_eps == Approx(123.0675).epsilon(1e-5));
  CHECK(b.N() == 124);

  const ConvergenceBudget b2 = convergence_budget(kMain1, 2e-3);
  CHECK(b.N_eps - b2.N_eps == Approx(std::log(2.0) / b.sigma1).epsilon(1e-9));
}

TEST_CASE("distance to the truncated factor on the main fixture") {
  const SconvReport r = verify_sconv(kMain1, 1e-3);
  CHECK(r.N == 124);
  CHECK(r.distance <= 1e-3);
  CHECK(r.distance_sampled <= r.distance + 1e-12);
  CHECK(r.envelope_violations.empty());
  CHECK(r.gamma1_pass);
  CHECK(r.pass());

  const SconvReport y = verify_sconv(kYOnly, 1e-3);
  CHECK(y.distance < 1e-12);
  CHECK(y.pass());
}

TEST_CASE("measured distances decay with N") {
  const auto d = measure_distances(kMain1, 256, {1, 4, 16});
  REQUIRE(d.size() == 3);
  CHECK(d[0].upper > d[1].upper);
  CHECK(d[1].upper > d[2].upper);
  for (const auto& s : d) CHECK(s.sampled <= s.upper + 1e-12);
}

TEST_CASE("torus extrema are shared by sheared polynomials") {
  const TorusExtrema e = torus_extrema(kMain1);
  CHECK(e.min_t <= 2.0 + 1e-12);
  CHECK(e.min_t > 2.0 - 1e-6);
  CHECK(e.sup_t >= 4.0 - 1e-12);
  const ConvergenceBudget a = convergence_budget(kMain1, 1e-3);
  const ConvergenceBudget b = convergence_budget(kMain1, 1e-3, e);
  CHECK(a.N_eps == Approx(b.N_eps).epsilon(1e-6));
}
