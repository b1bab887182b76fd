#pragma once

// Exact scalar types and the handful of rounding helpers everything else is
// built on. Int and Rational are GMP values; Rational is always canonical.

#include <gmpxx.h>

#include <string>

namespace badline {

using Int = mpz_class;
using Rational = mpq_class;

/// Canonical num/den. Throws InvalidArgument on a zero denominator.
Rational make_rational(const Int& num, const Int& den);

/// Parses "p", "p/q" or "-p/q".
Rational parse_rational(const std::string& text);

Int floor(const Rational& r);
Int ceil(const Rational& r);
Rational abs(const Rational& r);
Int abs(const Int& v);

/// 2^e for any signed exponent.
Rational pow2(long e);

/// Largest e with 2^e <= r. Requires r > 0.
long floor_log2(const Rational& r);

Int isqrt(const Int& v);
Int ceil_sqrt(const Int& v);

// Dyadic bounds on sqrt(x) for x >= 0 with `bits` fractional bits.
Rational sqrt_lower(const Rational& x, unsigned bits = 64);
Rational sqrt_upper(const Rational& x, unsigned bits = 64);

/// Smallest dyadic >= r with `bits` significant bits (r > 0), or 0 for r = 0.
Rational round_up_dyadic(const Rational& r, unsigned bits = 64);

/// Distance to the nearest integer, ||r||.
Rational dist_to_int(const Rational& r);

/// Number of decimal digits of |v| (1 for zero).
std::size_t decimal_digits(const Int& v);

/// Short scientific rendering of an exact rational, e.g. "3.14159e-1234".
std::string to_sci(const Rational& r, int digits = 6);

/// Bits cap for refinable evaluations (env BADLINE_PRECISION_CAP, default 4096).
unsigned precision_cap();
inline constexpr unsigned kStartPrecision = 64;

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rational lo;
  Rational hi;

  static RatInterval point(const Rational& r) { return {r, r}; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  Rational width() const { return hi - lo; }
};

RatInterval operator+(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a, const RatInterval& b);
RatInterval operator-(const RatInterval& a);
RatInterval operator*(const RatInterval& a, const RatInterval& b);
RatInterval operator*(const Rational& s, const RatInterval& a);
/// Throws InvalidArgument if b contains zero.
RatInterval operator/(const RatInterval& a, const RatInterval& b);
RatInterval square(const RatInterval& a);

/// Certified bounds for ||v|| over all v in the interval.
RatInterval dist_to_int(const RatInterval& v);

}  // namespace badline
