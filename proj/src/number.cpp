#include "badline/number.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>

#include "badline/error.hpp"

namespace badline {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::NotPrimitivePair: return "NotPrimitivePair";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::NotABasis: return "NotABasis";
    case ErrorKind::NegativeBound: return "NegativeBound";
    case ErrorKind::OffPlane: return "OffPlane";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::ConeViolation: return "ConeViolation";
    case ErrorKind::StepFailed: return "StepFailed";
    case ErrorKind::OffLine: return "OffLine";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  Int num, den = 1;
  try {
    if (slash == std::string::npos) {
      num = Int(text);
    } else {
      num = Int(text.substr(0, slash));
      den = Int(text.substr(slash + 1));
    }
  } catch (const std::invalid_argument&) {
    throw Error(ErrorKind::ParseError, "not a rational: '" + text + "'");
  }
  return make_rational(num, den);
}

Int floor(const Rational& r) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Int ceil(const Rational& r) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return out;
}

Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }
Int abs(const Int& v) { return v < 0 ? Int(-v) : v; }

Rational pow2(long e) {
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(Int(1), p) : Rational(p);
}

long floor_log2(const Rational& r) {
  if (r <= 0) throw Error(ErrorKind::InvalidArgument, "floor_log2 of non-positive");
  long e = static_cast<long>(mpz_sizeinbase(r.get_num_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(r.get_den_mpz_t(), 2));
  // r lies in [2^(e-1), 2^(e+1)); fix up by at most one step either way.
  while (pow2(e) > r) --e;
  while (pow2(e + 1) <= r) ++e;
  return e;
}

Int isqrt(const Int& v) {
  if (v < 0) throw Error(ErrorKind::InvalidArgument, "isqrt of negative");
  Int out;
  mpz_sqrt(out.get_mpz_t(), v.get_mpz_t());
  return out;
}

Int ceil_sqrt(const Int& v) {
  Int r = isqrt(v);
  if (r * r < v) r += 1;
  return r;
}

Rational sqrt_lower(const Rational& x, unsigned bits) {
  if (x < 0) throw Error(ErrorKind::InvalidArgument, "sqrt of negative");
  Rational scaled = x * pow2(2 * static_cast<long>(bits));
  return Rational(isqrt(floor(scaled))) * pow2(-static_cast<long>(bits));
}

Rational sqrt_upper(const Rational& x, unsigned bits) {
  if (x < 0) throw Error(ErrorKind::InvalidArgument, "sqrt of negative");
  Rational scaled = x * pow2(2 * static_cast<long>(bits));
  return Rational(ceil_sqrt(ceil(scaled))) * pow2(-static_cast<long>(bits));
}

Rational round_up_dyadic(const Rational& r, unsigned bits) {
  if (r < 0) throw Error(ErrorKind::InvalidArgument, "round_up_dyadic of negative");
  if (r == 0) return r;
  long shift = static_cast<long>(bits) - floor_log2(r);
  return Rational(ceil(r * pow2(shift))) * pow2(-shift);
}

Rational dist_to_int(const Rational& r) {
  Rational frac = r - Rational(floor(r));
  Rational other = Rational(1) - frac;
  return frac < other ? frac : other;
}

RatInterval dist_to_int(const RatInterval& v) {
  if (v.width() >= 1) return {Rational(0), Rational(1, 2)};
  Rational a = dist_to_int(v.lo);
  Rational b = dist_to_int(v.hi);
  bool has_int = ceil(v.lo) <= floor(v.hi);
  Rational shifted_lo = v.lo - Rational(1, 2);
  Rational shifted_hi = v.hi - Rational(1, 2);
  bool has_half = ceil(shifted_lo) <= floor(shifted_hi);
  RatInterval out;
  out.lo = has_int ? Rational(0) : std::min(a, b);
  out.hi = has_half ? Rational(1, 2) : std::max(a, b);
  return out;
}

std::size_t decimal_digits(const Int& v) {
  if (v == 0) return 1;
  return abs(v).get_str().size();
}

std::string to_sci(const Rational& r, int digits) {
  if (r == 0) return "0";
  mpfr_t x;
  mpfr_init2(x, 64);
  mpfr_set_q(x, r.get_mpq_t(), MPFR_RNDN);
  mpfr_exp_t exp10 = 0;
  char* s = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), x, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  mpfr_clear(x);
  std::string sign;
  if (!m.empty() && m[0] == '-') {
    sign = "-";
    m.erase(0, 1);
  }
  std::string out = sign + m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

unsigned precision_cap() {
  static const unsigned cap = [] {
    const char* env = std::getenv("BADLINE_PRECISION_CAP");
    if (env == nullptr) return 4096u;
    long v = std::strtol(env, nullptr, 10);
    return v >= static_cast<long>(kStartPrecision) ? static_cast<unsigned>(v) : 4096u;
  }();
  return cap;
}

RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }

RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RatInterval operator*(const Rational& s, const RatInterval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

RatInterval operator/(const RatInterval& a, const RatInterval& b) {
  if (b.contains_zero()) throw Error(ErrorKind::InvalidArgument, "interval division by zero");
  RatInterval inv{Rational(1) / b.hi, Rational(1) / b.lo};
  return a * inv;
}

RatInterval square(const RatInterval& a) {
  Rational l = a.lo * a.lo, h = a.hi * a.hi;
  if (a.contains_zero()) return {Rational(0), std::max(l, h)};
  return {std::min(l, h), std::max(l, h)};
}

}  // namespace badline
