#pragma once

#include <array>
#include <functional>
#include <string>

#include "badline/number.hpp"

namespace badline {

/// An interval-refinable real number. Supported forms:
///   exact rational r
///   sqrt(r) + c for rational r >= 0, c
///   a fixed enclosure [lo, hi] (does not refine)
class RealOracle {
 public:
  static RealOracle exact(const Rational& r);
  static RealOracle sqrt_plus(const Rational& radicand, const Rational& shift = Rational(0));
  static RealOracle enclosure(const Rational& lo, const Rational& hi);

  /// "sqrt:2-1", "sqrt:3", "sqrt:2+1/3", "rat:1/3", "interval:1/3,1/2".
  static RealOracle parse(const std::string& text);

  /// Enclosure with width at most 2^-bits (for refinable forms).
  RatInterval eval(unsigned bits) const;

  std::string describe() const;

 private:
  enum class Kind { Exact, Surd, Enclosure };
  Kind kind_ = Kind::Exact;
  Rational a_, b_;
};

/// Direction oracle: an enclosure of a real 3-vector at a requested precision.
using RealVec3Oracle = std::function<std::array<RatInterval, 3>(unsigned bits)>;

/// Oracle for a fixed rational vector.
RealVec3Oracle exact_direction(const Rational& x0, const Rational& x1, const Rational& x2);

}  // namespace badline
