#pragma once

// Dense 3- and 2-vectors templated on the scalar, with free-function algebra.
// IVec3 holds arbitrary-precision integers, QVec3 canonical rationals.

#include <array>
#include <cstddef>
#include <ostream>

#include "badline/number.hpp"

namespace badline {

template <class Scalar>
struct Vec3 {
  Scalar x0{}, x1{}, x2{};

  Scalar& operator[](std::size_t i) { return i == 0 ? x0 : (i == 1 ? x1 : x2); }
  const Scalar& operator[](std::size_t i) const { return i == 0 ? x0 : (i == 1 ? x1 : x2); }

  bool operator==(const Vec3&) const = default;
};

template <class Scalar>
struct Vec2 {
  Scalar x1{}, x2{};

  Scalar& operator[](std::size_t i) { return i == 0 ? x1 : x2; }
  const Scalar& operator[](std::size_t i) const { return i == 0 ? x1 : x2; }

  bool operator==(const Vec2&) const = default;
};

using IVec3 = Vec3<Int>;
using QVec3 = Vec3<Rational>;
using QVec2 = Vec2<Rational>;

template <class S>
Vec3<S> operator+(const Vec3<S>& a, const Vec3<S>& b) {
  return {S(a.x0 + b.x0), S(a.x1 + b.x1), S(a.x2 + b.x2)};
}

template <class S>
Vec3<S> operator-(const Vec3<S>& a, const Vec3<S>& b) {
  return {S(a.x0 - b.x0), S(a.x1 - b.x1), S(a.x2 - b.x2)};
}

template <class S>
Vec3<S> operator-(const Vec3<S>& a) {
  return {S(-a.x0), S(-a.x1), S(-a.x2)};
}

template <class S>
Vec3<S> operator*(const S& s, const Vec3<S>& a) {
  return {S(s * a.x0), S(s * a.x1), S(s * a.x2)};
}

template <class S>
Vec2<S> operator+(const Vec2<S>& a, const Vec2<S>& b) {
  return {S(a.x1 + b.x1), S(a.x2 + b.x2)};
}

template <class S>
Vec2<S> operator-(const Vec2<S>& a, const Vec2<S>& b) {
  return {S(a.x1 - b.x1), S(a.x2 - b.x2)};
}

template <class S>
Vec2<S> operator*(const S& s, const Vec2<S>& a) {
  return {S(s * a.x1), S(s * a.x2)};
}

template <class S>
S dot(const Vec3<S>& a, const Vec3<S>& b) {
  return S(a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2);
}

template <class S>
S dot(const Vec2<S>& a, const Vec2<S>& b) {
  return S(a.x1 * b.x1 + a.x2 * b.x2);
}

template <class S>
S norm_sq(const Vec3<S>& a) {
  return dot(a, a);
}

template <class S>
S norm_sq(const Vec2<S>& a) {
  return dot(a, a);
}

template <class S>
Vec3<S> cross(const Vec3<S>& u, const Vec3<S>& v) {
  return {S(u.x1 * v.x2 - u.x2 * v.x1), S(u.x2 * v.x0 - u.x0 * v.x2),
          S(u.x0 * v.x1 - u.x1 * v.x0)};
}

/// (u x v, w).
template <class S>
S det3(const Vec3<S>& u, const Vec3<S>& v, const Vec3<S>& w) {
  return dot(cross(u, v), w);
}

/// Sup norm.
template <class S>
S norm_inf(const Vec2<S>& a) {
  S b1 = abs(a.x1), b2 = abs(a.x2);
  return b1 < b2 ? b2 : b1;
}

inline QVec3 to_rational(const IVec3& v) {
  return {Rational(v.x0), Rational(v.x1), Rational(v.x2)};
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Vec3<S>& v) {
  return os << '(' << v.x0 << ", " << v.x1 << ", " << v.x2 << ')';
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Vec2<S>& v) {
  return os << '(' << v.x1 << ", " << v.x2 << ')';
}

}  // namespace badline
