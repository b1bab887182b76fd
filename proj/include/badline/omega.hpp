#pragma once

#include <string>

#include "badline/number.hpp"

namespace badline {

/// The slowly increasing gauge omega(t), evaluated as outward-rounded
/// rational intervals. Presets:
///   Log     1 + ln(1 + t)
///   LogLog  1 + ln(1 + ln(1 + t))
///   Pow     (1 + t)^eps, 0 < eps <= 1/4
class OmegaFn {
 public:
  enum class Preset { Log, LogLog, Pow };

  OmegaFn() = default;
  static OmegaFn log() { return OmegaFn(Preset::Log, Rational(0)); }
  static OmegaFn loglog() { return OmegaFn(Preset::LogLog, Rational(0)); }
  /// Throws InvalidArgument unless 0 < eps <= 1/4.
  static OmegaFn pow(const Rational& eps);
  /// "log", "loglog", "pow:1/5".
  static OmegaFn parse(const std::string& text);

  Preset preset() const { return preset_; }
  const Rational& eps() const { return eps_; }
  std::string name() const;

  /// Enclosure of omega(t) for t >= 0 at `bits` of working precision.
  RatInterval eval(const Rational& t, unsigned bits = kStartPrecision) const;

  /// Lower/upper bounds of omega(t) at the default precision.
  Rational lo(const Rational& t) const { return eval(t).lo; }
  Rational hi(const Rational& t) const { return eval(t).hi; }

  bool operator==(const OmegaFn&) const = default;

 private:
  OmegaFn(Preset p, const Rational& eps) : preset_(p), eps_(eps) {}

  Preset preset_ = Preset::Log;
  Rational eps_;
};

}  // namespace badline
