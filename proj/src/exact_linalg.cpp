#include "badline/exact_linalg.hpp"

#include <tuple>

#include "badline/error.hpp"

namespace badline {

NormSq::NormSq(const Rational& v) : value(v) {
  if (v < 0) throw Error(ErrorKind::InvalidArgument, "negative squared norm");
}

ContentSplit primitive_content(const IVec3& v) {
  Int g;
  mpz_gcd(g.get_mpz_t(), v.x0.get_mpz_t(), v.x1.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.x2.get_mpz_t());
  if (g == 0) throw Error(ErrorKind::ZeroVector, "zero vector has no content");
  return {g, IVec3{Int(v.x0 / g), Int(v.x1 / g), Int(v.x2 / g)}};
}

bool is_primitive_pair(const IVec3& u, const IVec3& v) {
  IVec3 n = cross(u, v);
  if (n == IVec3{}) return false;
  return primitive_content(n).content == 1;
}

namespace detail {

void lagrange_reduce(IVec3& u, IVec3& v) {
  if (norm_sq(u) > norm_sq(v)) std::swap(u, v);
  for (;;) {
    Int uu = norm_sq(u);
    // mu = round((u,v)/|u|^2), ties toward +infinity
    Int mu = floor(Rational(2 * dot(u, v) + uu, 2 * uu));
    if (mu != 0) v = v - mu * u;
    if (norm_sq(v) < uu) {
      std::swap(u, v);
    } else {
      return;
    }
  }
}

}  // namespace detail

namespace {

bool lex_less(const IVec3& a, const IVec3& b) {
  return std::tie(a.x0, a.x1, a.x2) < std::tie(b.x0, b.x1, b.x2);
}

}  // namespace

IVec3 complete_to_basis(const IVec3& u, const IVec3& v) {
  if (!is_primitive_pair(u, v)) {
    throw Error(ErrorKind::NotPrimitivePair, "pair does not extend to a basis of Z^3");
  }
  IVec3 n = cross(u, v);
  // s*n0 + t*n1 = g01, a*g01 + b*n2 = 1
  Int g01, s, t, g, a, b;
  mpz_gcdext(g01.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), n.x0.get_mpz_t(), n.x1.get_mpz_t());
  mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), g01.get_mpz_t(), n.x2.get_mpz_t());
  IVec3 c{Int(a * s), Int(a * t), b};
  if (g < 0) c = -c;

  IVec3 b1 = u, b2 = v;
  detail::lagrange_reduce(b1, b2);
  Int g11 = norm_sq(b1), g12 = dot(b1, b2), g22 = norm_sq(b2);
  Int r1 = dot(c, b1), r2 = dot(c, b2);
  Int det = g11 * g22 - g12 * g12;
  Rational m = make_rational(r1 * g22 - r2 * g12, det);
  Rational k = make_rational(g11 * r2 - g12 * r1, det);
  Int m0 = floor(m + Rational(1, 2)), k0 = floor(k + Rational(1, 2));

  IVec3 best;
  Int best_norm = -1;
  for (int dm = -1; dm <= 1; ++dm) {
    for (int dk = -1; dk <= 1; ++dk) {
      IVec3 cand = c - Int(m0 + dm) * b1 - Int(k0 + dk) * b2;
      Int nn = norm_sq(cand);
      if (best_norm < 0 || nn < best_norm || (nn == best_norm && lex_less(cand, best))) {
        best = cand;
        best_norm = nn;
      }
    }
  }
  return best;
}

Int level_index(const IVec3& u, const IVec3& v, const IVec3& zp, const IVec3& x) {
  Int d = det3(u, v, zp);
  if (d != 1 && d != -1) throw Error(ErrorKind::NotABasis, "det3(u, v, zp) is not +-1");
  return Int(det3(u, v, x) * d);
}

std::strong_ordering cmp_norm(const NormSq& a, const Rational& r) {
  if (r < 0) throw Error(ErrorKind::NegativeBound, "negative norm bound");
  Rational rr = r * r;
  if (a.value < rr) return std::strong_ordering::less;
  if (a.value > rr) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational dot(const QVec3& a, const IVec3& b) {
  return Rational(a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2);
}

}  // namespace badline
