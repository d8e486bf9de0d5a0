#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace latfac {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Closed interval [lo, hi] of rationals; a point when lo == hi.
struct RationalInterval {
  BigRational lo;
  BigRational hi;

  static RationalInterval point(const BigRational& v) { return {v, v}; }
  bool is_point() const { return lo == hi; }
  // The nearest double to the midpoint.
  double approx() const;

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  // Throws DegenerateDirection when b contains 0.
  friend RationalInterval operator/(const RationalInterval& a, const RationalInterval& b);
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

// |x| over the interval.
RationalInterval abs(const RationalInterval& x);

BigInt floor_of(const BigRational& v);
BigInt ceil_of(const BigRational& v);

// Exact value of a finite double.
BigRational exact_rational(double v);

// Parses "[-]digits[.digits]" into an exact decimal.
BigRational parse_decimal(const std::string& s, std::size_t* fraction_digits = nullptr);

// Enclosure of a rational by doubles: lo <= v <= hi.
double round_down(const BigRational& v);
double round_up(const BigRational& v);

std::string to_string(const BigRational& v);

}  // namespace latfac
