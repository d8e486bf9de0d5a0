#include "latfac/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "latfac/error.hpp"

namespace latfac {

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

double RationalInterval::approx() const {
  const BigRational mid = (lo + hi) / 2;
  return mid.convert_to<double>();
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  const BigRational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RationalInterval operator/(const RationalInterval& a, const RationalInterval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw Error(ErrorCode::DegenerateDirection, "interval division by an interval containing 0");
  return a * RationalInterval{1 / b.hi, 1 / b.lo};
}

RationalInterval abs(const RationalInterval& x) {
  if (x.lo >= 0) return x;
  if (x.hi <= 0) return {-x.hi, -x.lo};
  return {BigRational(0), std::max<BigRational>(-x.lo, x.hi)};
}

BigInt floor_of(const BigRational& v) {
  const BigInt n = numerator(v);
  const BigInt d = denominator(v);
  BigInt q = n / d;
  if (n % d != 0 && n < 0) q -= 1;
  return q;
}

BigInt ceil_of(const BigRational& v) { return -floor_of(-v); }

BigRational exact_rational(double v) {
  if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "exact_rational: value is not finite");
  if (v == 0) return 0;
  int e = 0;
  const double f = std::frexp(v, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(f, 53));
  const int shift = e - 53;
  BigRational r{BigInt(mant)};
  if (shift >= 0) return r * BigRational(BigInt(1) << shift);
  return r / BigRational(BigInt(1) << (-shift));
}

BigRational parse_decimal(const std::string& s, std::size_t* fraction_digits) {
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) neg = s[i++] == '-';
  std::string digits;
  std::size_t frac = 0;
  bool seen_dot = false;
  bool any = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (seen_dot) ++frac;
    } else {
      throw Error(ErrorCode::InvalidInput, "not a decimal number: " + s);
    }
  }
  if (!any) throw Error(ErrorCode::InvalidInput, "not a decimal number: " + s);
  if (fraction_digits) *fraction_digits = frac;
  // A leading zero would make the string octal.
  const std::size_t nz = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  const BigInt num(digits.substr(nz));
  const BigInt den = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(frac));
  BigRational r(num, den);
  return neg ? -r : r;
}

double round_down(const BigRational& v) {
  double d = v.convert_to<double>();
  while (exact_rational(d) > v) d = std::nextafter(d, -INFINITY);
  return d;
}

double round_up(const BigRational& v) {
  double d = v.convert_to<double>();
  while (exact_rational(d) < v) d = std::nextafter(d, INFINITY);
  return d;
}

std::string to_string(const BigRational& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace latfac
