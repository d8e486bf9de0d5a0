#include <doctest.h>

#include <cmath>
#include <numbers>

#include "latfac/corpus.hpp"
#include "latfac/error.hpp"
#include "latfac/specfactor1d.hpp"

using namespace latfac;
using doctest::Approx;

namespace {

const TrigPoly1 kFiveHalves{{-1, 1.0}, {0, 2.5}, {1, 1.0}};
const double kSqrt2 = std::sqrt(2.0);

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_CASE("bound profile of the five-halves polynomial") {
  const BoundProfile p = bound_profile(kFiveHalves);
  CHECK(p.rho == Approx(0.5 / (2.0 * std::numbers::e * 4.5)).epsilon(1e-6));
  CHECK(p.theta == Approx(0.0));
  // pi/2 + log 4 = 2.957087, which the closed form gives to five digits.
  CHECK(p.tau == Approx(std::numbers::pi / 2 + std::log(4.0)).epsilon(1e-6));
  CHECK(std::abs(p.tau - 2.95700) < 1e-4);
}

TEST_CASE("bound profile of constants and of 3 + e_1") {
  const BoundProfile c = bound_profile(TrigPoly1::constant(1.0));
  CHECK(c.theta == 0.0);
  CHECK(c.sup_t == Approx(1.0));
  CHECK(c.B == Approx(1.0));
  const BoundProfile p = bound_profile(TrigPoly1{{0, 3.0}, {1, 1.0}});
  CHECK(p.min_re == Approx(2.0).epsilon(1e-6));
  CHECK(p.l1 == Approx(4.0));
  CHECK(p.rho == Approx(0.091970).epsilon(1e-5));
}

TEST_CASE("psi_factor closed forms") {
  const FactorPair f = psi_factor(kFiveHalves);
  CHECK(close(f.psi_plus.coeff(0), kSqrt2, 1e-10));
  CHECK(close(f.psi_plus.coeff(1), 1.0 / kSqrt2, 1e-10));
  CHECK(close(f.psi_minus.coeff(-1), 1.0 / kSqrt2, 1e-10));

  const FactorPair nine = psi_factor(TrigPoly1::constant(9.0));
  CHECK(close(nine.psi_plus.coeff(0), 3.0, 1e-14));
  CHECK(close(nine.psi_minus.coeff(0), 3.0, 1e-14));

  const FactorPair two = psi_factor(TrigPoly1{{0, 2.0}, {1, 1.0}});
  CHECK(close(two.psi_plus.coeff(0), kSqrt2, 1e-10));
  CHECK(close(two.psi_plus.coeff(1), kSqrt2 / 2.0, 1e-10));
  CHECK(two.psi_minus.size() == 1);
  CHECK(close(two.psi_minus.coeff(0), kSqrt2, 1e-10));
}

TEST_CASE("root oracle") {
  const LaurentRoots r = laurent_roots(kFiveHalves);
  REQUIRE(r.roots.size() == 2);
  CHECK(close(r.roots[0], -0.5, 1e-12));
  CHECK(close(r.roots[1], -2.0, 1e-12));
  const RootFactorPair f = psi_factor_roots(kFiveHalves);
  CHECK(close(f.psi_plus.coeff(0), kSqrt2, 1e-10));
  CHECK(close(f.psi_plus.coeff(1), 1.0 / kSqrt2, 1e-10));

  // e_{-1} (z - 0.5)(z - 3) = e_1 - 3.5 + 1.5 e_{-1}
  const RootFactorPair g = psi_factor_roots(TrigPoly1{{1, 1.0}, {0, -3.5}, {-1, 1.5}});
  REQUIRE(g.lambda_minus.size() == 1);
  REQUIRE(g.lambda_plus.size() == 1);
  CHECK(close(g.lambda_minus[0], 0.5, 1e-12));
  CHECK(close(g.lambda_plus[0], 1.0 / 3.0, 1e-12));

  try {
    psi_factor_roots(TrigPoly1{{-1, 1.0}, {0, 2.0}, {1, 1.0}});
    FAIL("expected RootOnCircle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RootOnCircle);
  }
}

TEST_CASE("the t_n family") {
  const TrigPoly1 t5 = example1_poly(5);
  CHECK(t5.n_plus() == 5);
  CHECK(t5.n_minus() == 5);
  const double m = mahler_measure(t5).value();
  CHECK(std::abs(m / std::exp(2.0 / std::numbers::pi) - 1.0) < 0.1);
  const RootFactorPair f = psi_factor_roots(t5);
  CHECK(f.lambda_plus.size() == 5);
  CHECK(f.lambda_minus.size() == 5);
  CHECK_THROWS_AS(example1_poly(4), Error);
}

TEST_CASE("Mahler measure") {
  CHECK(mahler_measure(TrigPoly1{{0, 2.0}, {1, 1.0}}).value() == Approx(2.0).epsilon(1e-12));
  CHECK(mahler_measure(TrigPoly1::monomial(1)).value() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bound checks") {
  const PsiBoundReport r = psi_bound_check(kFiveHalves);
  CHECK(r.pass());
  CHECK(r.sup_plus.contains(kSqrt2 + 1.0 / kSqrt2, 1e-8));
  CHECK(psi_bound_check(TrigPoly1::constant(7.0)).pass());

  const TrigPoly1 t9 = example1_poly(9);
  const double shift = sup_norm_certified(t9, 1e-9).upper + 1.0;
  CHECK(psi_bound_check(t9 + TrigPoly1::constant(shift)).pass());
}

TEST_CASE("cepstral and root factors agree on a small corpus") {
  CorpusOptions o;
  o.seed = 21;
  o.count = 20;
  o.max_n1 = 12;
  for (const TrigPoly1& t : corpus1d(o)) {
    const FactorPair a = psi_factor(t, 1e-11 * l1_coeff_norm(t));
    const RootFactorPair b = psi_factor_roots(t);
    for (std::int64_t j = 0; j <= t.n_plus(); ++j) CHECK(close(a.psi_plus.coeff(j), b.psi_plus.coeff(j), 1e-8));
    const TrigPoly1 resid = a.psi_plus * a.psi_minus - t;
    CHECK(l1_coeff_norm(resid) <= 1e-9 * l1_coeff_norm(t));
  }
}

TEST_CASE("complex polynomials with zero winding factor too") {
  const TrigPoly1 t{{-1, {0.3, 0.2}}, {0, 2.0}, {2, {-0.4, 0.7}}};
  const FactorPair a = psi_factor(t);
  const RootFactorPair b = psi_factor_roots(t);
  for (std::int64_t j = 0; j <= 2; ++j) CHECK(close(a.psi_plus.coeff(j), b.psi_plus.coeff(j), 1e-8));
  CHECK(l1_coeff_norm(a.psi_plus * a.psi_minus - t) < 1e-9);
}
