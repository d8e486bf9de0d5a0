#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latfac/rational.hpp"
#include "latfac/trigpoly.hpp"

namespace latfac {

struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;
};

// Slope of a strip: an exact rational, or a real number known to lie in a
// rational interval (e.g. a decimal string d with D digits stands for
// [d - 10^-D, d + 10^-D]).
class Alpha {
 public:
  enum class Kind { Rational, Real };

  Alpha() : Alpha(rational(0, 1)) {}
  static Alpha rational(std::int64_t p, std::int64_t q);
  static Alpha rational(const BigRational& v);
  static Alpha real_digits(const std::string& digits);
  static Alpha real_interval(const RationalInterval& iv, std::string label = {});

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  const RationalInterval& interval() const noexcept { return iv_; }
  // Exact value; only for rational alpha.
  const BigRational& value() const;
  // p/q with q > 0 in lowest terms; throws InvalidInput if it does not fit int64.
  Rational as_rational() const;
  double approx() const { return iv_.approx(); }
  const std::string& digits() const noexcept { return digits_; }

 private:
  Alpha(Kind kind, RationalInterval iv, std::string digits)
      : kind_(kind), iv_(std::move(iv)), digits_(std::move(digits)) {}
  Kind kind_;
  RationalInterval iv_;
  std::string digits_;
};

// F(alpha, beta) = {(j, k) : |k - j alpha| < beta}. Beta is an interval too so
// that images and reflections of real strips stay certified.
struct LatticeStrip {
  Alpha alpha;
  RationalInterval beta;

  LatticeStrip() = default;
  LatticeStrip(Alpha a, double b);
  LatticeStrip(Alpha a, RationalInterval b);
  double beta_approx() const { return beta.approx(); }
};

// |k - j alpha| as an interval.
RationalInterval strip_offset(const Alpha& alpha, Freq2 p);

// Exact for rational alpha; certified for real alpha. Throws Undecidable when
// the enclosures of |k - j alpha| and beta overlap at the boundary.
bool strip_contains(const LatticeStrip& F, Freq2 p);

// Members of F with |j| <= jmax, sorted.
std::vector<Freq2> strip_window(const LatticeStrip& F, std::int64_t jmax);

// F^r = F(1/alpha, beta/|alpha|). Throws ZeroAlpha.
LatticeStrip reflect(const LatticeStrip& F);
std::vector<Freq2> reflect_points(std::span<const Freq2> points);

// d in F - F: exact for rational alpha (some u in (1/q)Z has |u| < beta and
// |u - d| < beta), certified |d| < 2 beta for real alpha.
bool in_difference_set(const LatticeStrip& F, Freq2 d);

class ModularMap {
 public:
  ModularMap() : ModularMap(1, 0, 0, 1) {}
  // Throws InvalidInput unless g11 g22 - g12 g21 = 1.
  ModularMap(std::int64_t g11, std::int64_t g12, std::int64_t g21, std::int64_t g22);
  static ModularMap identity() { return {}; }

  std::int64_t g11() const noexcept { return g11_; }
  std::int64_t g12() const noexcept { return g12_; }
  std::int64_t g21() const noexcept { return g21_; }
  std::int64_t g22() const noexcept { return g22_; }

  ModularMap inverse() const { return {g22_, -g12_, -g21_, g11_}; }
  Freq2 apply(Freq2 p) const;
  friend bool operator==(const ModularMap&, const ModularMap&) = default;

 private:
  std::int64_t g11_, g12_, g21_, g22_;
};

Freq2 sl2_apply(const ModularMap& g, Freq2 p);
TrigPoly2 sl2_apply_poly(const ModularMap& g, const TrigPoly2& t);

// g(F(alpha, beta)) = F((g21 + alpha g22)/(g11 + alpha g12), beta/|g11 + alpha g12|).
// Throws DegenerateDirection when g11 + alpha g12 can vanish.
LatticeStrip strip_image(const ModularMap& g, const LatticeStrip& F);

// g22 = q, g21 = -p, g11 q + g12 p = 1 and, for q >= 2,
// |g11| <= |g12| <= q/2. Throws NotLowestTerms, InvalidInput (|alpha| > 1).
ModularMap find_g_rational(Rational alpha);

struct Convergent {
  BigInt p;
  BigInt q;
};

// Continued-fraction convergents with strictly increasing q. A rational alpha
// may return fewer than count. Throws PrecisionExhausted when the interval
// can no longer decide the next partial quotient.
std::vector<Convergent> convergents(const Alpha& alpha, std::size_t count);
// Same, but returns the certified prefix instead of throwing.
std::vector<Convergent> certified_convergents(const Alpha& alpha, std::size_t count);

// |g21 + alpha g22| |g22| log|g22| as a certified enclosure. Requires |g22| >= 2.
Bracket amply_gap(const Alpha& alpha, const BigInt& g21, const BigInt& g22);
Bracket amply_gap(const Alpha& alpha, const ModularMap& g);

// Containment check: with alpha~ = -g21/g22, p in F(alpha~, beta~) and
// |j| |alpha - alpha~| < beta - beta~ certify p in F(alpha, beta).
bool lemma_lattice_check(std::int64_t g21, std::int64_t g22, const Alpha& alpha, const RationalInterval& beta,
                         const BigRational& beta_tilde, Freq2 p);
bool lemma_lattice_check(std::int64_t g21, std::int64_t g22, const Alpha& alpha, double beta, double beta_tilde,
                         Freq2 p);

}  // namespace latfac
