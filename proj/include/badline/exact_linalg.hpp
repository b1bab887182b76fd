#pragma once

#include <compare>

#include "badline/vec3.hpp"

namespace badline {

/// Exact squared Euclidean norm |v|^2. Lengths are never square-rooted.
struct NormSq {
  Rational value;

  NormSq() = default;
  explicit NormSq(const Rational& v);
  static NormSq of(const IVec3& v) { return NormSq(Rational(norm_sq(v))); }
  static NormSq of(const QVec3& v) { return NormSq(norm_sq(v)); }
};

struct ContentSplit {
  Int content;
  IVec3 primitive;
};

/// gcd of the coordinates and v / gcd. Throws ZeroVector.
ContentSplit primitive_content(const IVec3& v);

/// True when cross(u, v) has content 1.
bool is_primitive_pair(const IVec3& u, const IVec3& v);

/// An integer z' with det3(u, v, z') = +1: the shortest representative of the
/// extended-gcd solution modulo <u, v>, lexicographically smallest on ties.
/// Throws NotPrimitivePair.
IVec3 complete_to_basis(const IVec3& u, const IVec3& v);

/// j such that x lies in <u, v>_Z + j*zp. Throws NotABasis unless
/// det3(u, v, zp) = +-1.
Int level_index(const IVec3& u, const IVec3& v, const IVec3& zp, const IVec3& x);

/// Sign of |v| - r, decided on squares. Throws NegativeBound for r < 0.
std::strong_ordering cmp_norm(const NormSq& a, const Rational& r);

/// Mixed rational-integer inner product.
Rational dot(const QVec3& a, const IVec3& b);

namespace detail {
/// Lagrange-Gauss reduction of a planar pair: |u| <= |v|, |(u,v)| <= |u|^2/2.
void lagrange_reduce(IVec3& u, IVec3& v);
}  // namespace detail

}  // namespace badline
