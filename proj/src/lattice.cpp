#include "latfac/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "latfac/error.hpp"

namespace latfac {
namespace {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

std::int64_t checked(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw Error(ErrorCode::InvalidInput, "lattice point overflows int64");
  return static_cast<std::int64_t>(v);
}

RationalInterval times(std::int64_t j, const RationalInterval& a) {
  const BigRational x = a.lo * j;
  const BigRational y = a.hi * j;
  return j >= 0 ? RationalInterval{x, y} : RationalInterval{y, x};
}

// Extended Euclid: returns (g, x, y) with a x + b y = g >= 0.
struct Egcd {
  std::int64_t g, x, y;
};
Egcd egcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const std::int64_t q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Alpha Alpha::rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw Error(ErrorCode::InvalidInput, "alpha: zero denominator");
  return rational(BigRational(BigInt(p), BigInt(q)));
}

Alpha Alpha::rational(const BigRational& v) {
  return Alpha(Kind::Rational, RationalInterval::point(v), to_string(v));
}

Alpha Alpha::real_digits(const std::string& digits) {
  std::size_t frac = 0;
  const BigRational d = parse_decimal(digits, &frac);
  const BigRational r(BigInt(1), boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac)));
  return Alpha(Kind::Real, {d - r, d + r}, digits);
}

Alpha Alpha::real_interval(const RationalInterval& iv, std::string label) {
  if (iv.lo > iv.hi) throw Error(ErrorCode::InvalidInput, "alpha: empty interval");
  return Alpha(Kind::Real, iv, std::move(label));
}

const BigRational& Alpha::value() const {
  if (!is_rational()) throw Error(ErrorCode::InvalidInput, "alpha is not an exact rational");
  return iv_.lo;
}

Rational Alpha::as_rational() const {
  const BigRational& v = value();
  const BigInt p = numerator(v);
  const BigInt q = denominator(v);
  const BigInt lim(std::numeric_limits<std::int64_t>::max());
  if (boost::multiprecision::abs(p) > lim || q > lim)
    throw Error(ErrorCode::InvalidInput, "alpha does not fit in 64-bit integers");
  return {p.convert_to<std::int64_t>(), q.convert_to<std::int64_t>()};
}

LatticeStrip::LatticeStrip(Alpha a, double b) : LatticeStrip(std::move(a), RationalInterval::point(exact_rational(b))) {}

LatticeStrip::LatticeStrip(Alpha a, RationalInterval b) : alpha(std::move(a)), beta(std::move(b)) {
  if (!(beta.lo > 0)) throw Error(ErrorCode::InvalidInput, "strip: beta must be positive");
}

RationalInterval strip_offset(const Alpha& alpha, Freq2 p) {
  return abs(RationalInterval::point(BigRational(p.k)) - times(p.j, alpha.interval()));
}

bool strip_contains(const LatticeStrip& F, Freq2 p) {
  const RationalInterval d = strip_offset(F.alpha, p);
  if (d.hi < F.beta.lo) return true;
  if (d.lo >= F.beta.hi) return false;
  throw Error(ErrorCode::Undecidable, "strip membership is within the precision of alpha and beta");
}

std::vector<Freq2> strip_window(const LatticeStrip& F, std::int64_t jmax) {
  if (jmax < 0) throw Error(ErrorCode::InvalidInput, "strip_window: jmax must be >= 0");
  std::vector<Freq2> out;
  for (std::int64_t j = -jmax; j <= jmax; ++j) {
    const RationalInterval c = times(j, F.alpha.interval());
    const auto k0 = floor_of(c.lo - F.beta.hi).convert_to<std::int64_t>();
    const auto k1 = ceil_of(c.hi + F.beta.hi).convert_to<std::int64_t>();
    for (std::int64_t k = k0; k <= k1; ++k)
      if (strip_contains(F, {j, k})) out.push_back({j, k});
  }
  return out;
}

LatticeStrip reflect(const LatticeStrip& F) {
  const RationalInterval& a = F.alpha.interval();
  if (a.lo <= 0 && a.hi >= 0) throw Error(ErrorCode::ZeroAlpha, "reflect: alpha = 0 has no strip reflection");
  const RationalInterval one = RationalInterval::point(1);
  const RationalInterval inv = one / a;
  const RationalInterval beta = F.beta / abs(a);
  if (F.alpha.is_rational()) return {Alpha::rational(inv.lo), beta};
  return {Alpha::real_interval(inv, "1/(" + F.alpha.digits() + ")"), beta};
}

std::vector<Freq2> reflect_points(std::span<const Freq2> points) {
  std::vector<Freq2> out;
  out.reserve(points.size());
  for (const Freq2& p : points) out.push_back({p.k, p.j});
  return out;
}

bool in_difference_set(const LatticeStrip& F, Freq2 d) {
  if (!F.alpha.is_rational()) {
    const RationalInterval off = strip_offset(F.alpha, d);
    if (off.hi < 2 * F.beta.lo) return true;
    if (off.lo >= 2 * F.beta.hi) return false;
    throw Error(ErrorCode::Undecidable, "difference-set membership is within the precision of alpha");
  }
  const BigRational& a = F.alpha.value();
  const BigInt num = numerator(a);
  const BigInt den = denominator(a);
  const BigInt D = den * d.k - num * d.j;
  // Some integer U with |U| < den beta and |U - D| < den beta.
  auto exists = [&](const BigRational& beta) {
    const BigRational w = beta * BigRational(den);
    const BigRational lo = std::max<BigRational>(-w, BigRational(D) - w);
    const BigRational hi = std::min<BigRational>(w, BigRational(D) + w);
    return BigRational(floor_of(lo) + 1) < hi;
  };
  const bool at_lo = exists(F.beta.lo);
  if (at_lo) return true;
  if (!exists(F.beta.hi)) return false;
  throw Error(ErrorCode::Undecidable, "difference-set membership depends on the precision of beta");
}

ModularMap::ModularMap(std::int64_t g11, std::int64_t g12, std::int64_t g21, std::int64_t g22)
    : g11_(g11), g12_(g12), g21_(g21), g22_(g22) {
  const __int128 det = static_cast<__int128>(g11) * g22 - static_cast<__int128>(g12) * g21;
  if (det != 1) throw Error(ErrorCode::InvalidInput, "modular map must have determinant 1");
}

Freq2 ModularMap::apply(Freq2 p) const {
  return {checked(static_cast<__int128>(g11_) * p.j + static_cast<__int128>(g12_) * p.k),
          checked(static_cast<__int128>(g21_) * p.j + static_cast<__int128>(g22_) * p.k)};
}

Freq2 sl2_apply(const ModularMap& g, Freq2 p) { return g.apply(p); }

TrigPoly2 sl2_apply_poly(const ModularMap& g, const TrigPoly2& t) {
  TrigPoly2::Map m;
  for (const auto& [f, c] : t.coeffs()) m.emplace(g.apply(f), c);
  return TrigPoly2(std::move(m));
}

LatticeStrip strip_image(const ModularMap& g, const LatticeStrip& F) {
  const RationalInterval& a = F.alpha.interval();
  const RationalInterval D = RationalInterval::point(BigRational(g.g11())) + times(g.g12(), a);
  if (D.lo <= 0 && D.hi >= 0) throw Error(ErrorCode::DegenerateDirection, "strip_image: g11 + alpha g12 = 0");
  // alpha -> (g21 + g22 alpha)/(g11 + g12 alpha) is increasing (determinant 1).
  auto mobius = [&](const BigRational& x) {
    return (BigRational(g.g21()) + BigRational(g.g22()) * x) / (BigRational(g.g11()) + BigRational(g.g12()) * x);
  };
  const RationalInterval na{mobius(a.lo), mobius(a.hi)};
  const RationalInterval nb = F.beta / abs(D);
  if (F.alpha.is_rational()) return {Alpha::rational(na.lo), nb};
  return {Alpha::real_interval(na, "image of " + F.alpha.digits()), nb};
}

ModularMap find_g_rational(Rational alpha) {
  const std::int64_t p = alpha.p;
  const std::int64_t q = alpha.q;
  if (q < 1) throw Error(ErrorCode::InvalidInput, "find_g_rational: q must be >= 1");
  if (std::gcd(p, q) != 1) throw Error(ErrorCode::NotLowestTerms, "find_g_rational: p/q is not in lowest terms");
  if (std::abs(p) > q) throw Error(ErrorCode::InvalidInput, "find_g_rational: |alpha| > 1, reflect first");
  if (p == 0) return ModularMap::identity();
  if (q == 1) return {0, p, -p, 1};

  // g11 q + g12 p = 1; the solutions are (x + m p, y - m q).
  const Egcd e = egcd(q, p);
  const std::int64_t m0 = floor_div(e.y, q);
  bool found = false;
  std::int64_t best11 = 0, best12 = 0;
  for (std::int64_t m = m0 - 1; m <= m0 + 2; ++m) {
    const std::int64_t g11 = e.x + m * p;
    const std::int64_t g12 = e.y - m * q;
    if (!(std::abs(g11) <= std::abs(g12) && 2 * std::abs(g12) <= q)) continue;
    const bool better = !found || std::abs(g11) < std::abs(best11) ||
                        (std::abs(g11) == std::abs(best11) && g12 > best12);
    if (better) {
      best11 = g11;
      best12 = g12;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::InvalidInput, "find_g_rational: no matrix satisfies the size constraints");
  return {best11, best12, -p, q};
}

std::vector<Convergent> certified_convergents(const Alpha& alpha, std::size_t count) {
  RationalInterval x = alpha.interval();
  BigInt h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  std::vector<Convergent> raw;
  while (raw.size() < count + 1) {
    const BigInt a = floor_of(x.lo);
    if (a != floor_of(x.hi)) break;
    const BigInt h = a * h1 + h2;
    const BigInt k = a * k1 + k2;
    raw.push_back({h, k});
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const BigRational flo = x.lo - BigRational(a);
    const BigRational fhi = x.hi - BigRational(a);
    if (fhi == 0 || flo == 0) break;
    x = {1 / fhi, 1 / flo};
  }
  if (raw.size() >= 2 && raw[1].q == raw[0].q) raw.erase(raw.begin());
  if (raw.size() > count) raw.resize(count);
  return raw;
}

std::vector<Convergent> convergents(const Alpha& alpha, std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidInput, "convergents: count must be >= 1");
  auto out = certified_convergents(alpha, count);
  if (out.size() < count && !alpha.is_rational())
    throw Error(ErrorCode::PrecisionExhausted,
                "convergents: only " + std::to_string(out.size()) + " are certified by the precision of alpha");
  return out;
}

Bracket amply_gap(const Alpha& alpha, const BigInt& g21, const BigInt& g22) {
  const BigInt q = boost::multiprecision::abs(g22);
  if (q < 2) throw Error(ErrorCode::InvalidInput, "amply_gap: |g22| must be >= 2");
  const RationalInterval v =
      abs(RationalInterval::point(BigRational(g21)) + alpha.interval() * RationalInterval::point(BigRational(g22)));
  if (v.hi.sign() == 0) return {0.0, 0.0};
  const double qlo = round_down(BigRational(q));
  const double qhi = round_up(BigRational(q));
  const double llo = std::nextafter(std::log(qlo), 0.0);
  const double lhi = std::nextafter(std::log(qhi), INFINITY);
  const double lower = round_down(v.lo) * qlo * llo;
  const double upper = round_up(v.hi) * qhi * lhi;
  return {std::nextafter(lower, -INFINITY) < 0 ? 0.0 : std::nextafter(lower, -INFINITY), std::nextafter(upper, INFINITY)};
}

Bracket amply_gap(const Alpha& alpha, const ModularMap& g) { return amply_gap(alpha, BigInt(g.g21()), BigInt(g.g22())); }

bool lemma_lattice_check(std::int64_t g21, std::int64_t g22, const Alpha& alpha, const RationalInterval& beta,
                         const BigRational& beta_tilde, Freq2 p) {
  if (g22 == 0 || std::gcd(g21, g22) != 1)
    throw Error(ErrorCode::InvalidInput, "lemma_lattice_check: g21, g22 must be coprime");
  const RationalInterval aa = abs(alpha.interval());
  if (!(aa.lo > 0 && aa.hi < 1)) throw Error(ErrorCode::InvalidInput, "lemma_lattice_check: need 0 < |alpha| < 1");
  if (!(beta_tilde > 0 && beta_tilde < beta.lo))
    throw Error(ErrorCode::InvalidInput, "lemma_lattice_check: need 0 < beta~ < beta");
  const Alpha at = Alpha::rational(BigRational(BigInt(-g21), BigInt(g22)));
  if (!strip_contains(LatticeStrip(at, RationalInterval::point(beta_tilde)), p)) return false;
  bool certified = p.j == 0;
  if (!certified) {
    const RationalInterval diff = abs(alpha.interval() - at.interval());
    certified = diff.hi * BigRational(p.j < 0 ? -p.j : p.j) < beta.lo - beta_tilde;
  }
  if (certified && !strip_contains(LatticeStrip(alpha, beta), p))
    throw std::logic_error("lemma_lattice_check: certified point is outside F(alpha, beta)");
  return certified;
}

bool lemma_lattice_check(std::int64_t g21, std::int64_t g22, const Alpha& alpha, double beta, double beta_tilde,
                         Freq2 p) {
  return lemma_lattice_check(g21, g22, alpha, RationalInterval::point(exact_rational(beta)), exact_rational(beta_tilde),
                             p);
}

}  // namespace latfac
