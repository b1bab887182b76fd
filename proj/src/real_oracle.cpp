#include "badline/real_oracle.hpp"

#include "badline/error.hpp"

namespace badline {

RealOracle RealOracle::exact(const Rational& r) {
  RealOracle o;
  o.kind_ = Kind::Exact;
  o.a_ = r;
  return o;
}

RealOracle RealOracle::sqrt_plus(const Rational& radicand, const Rational& shift) {
  if (radicand < 0) throw Error(ErrorKind::InvalidArgument, "negative radicand");
  RealOracle o;
  o.kind_ = Kind::Surd;
  o.a_ = radicand;
  o.b_ = shift;
  return o;
}

RealOracle RealOracle::enclosure(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw Error(ErrorKind::InvalidArgument, "empty enclosure");
  RealOracle o;
  o.kind_ = Kind::Enclosure;
  o.a_ = lo;
  o.b_ = hi;
  return o;
}

RealOracle RealOracle::parse(const std::string& text) {
  if (text.rfind("rat:", 0) == 0) return exact(parse_rational(text.substr(4)));
  if (text.rfind("interval:", 0) == 0) {
    std::string body = text.substr(9);
    auto comma = body.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "interval needs lo,hi");
    return enclosure(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
  }
  if (text.rfind("sqrt:", 0) == 0) {
    std::string body = text.substr(5);
    // the shift sign is the first +/- after the radicand
    auto pos = body.find_first_of("+-", 1);
    if (pos == std::string::npos) return sqrt_plus(parse_rational(body));
    Rational shift = parse_rational(body.substr(pos + 1));
    if (body[pos] == '-') shift = -shift;
    return sqrt_plus(parse_rational(body.substr(0, pos)), shift);
  }
  throw Error(ErrorKind::ParseError, "unknown real form '" + text + "'");
}

RatInterval RealOracle::eval(unsigned bits) const {
  switch (kind_) {
    case Kind::Exact: return RatInterval::point(a_);
    case Kind::Enclosure: return {a_, b_};
    case Kind::Surd: {
      Rational lo = sqrt_lower(a_, bits), hi = sqrt_upper(a_, bits);
      return {lo + b_, hi + b_};
    }
  }
  return RatInterval::point(a_);
}

std::string RealOracle::describe() const {
  switch (kind_) {
    case Kind::Exact: return "rat:" + a_.get_str();
    case Kind::Enclosure: return "interval:" + a_.get_str() + "," + b_.get_str();
    case Kind::Surd: {
      std::string s = "sqrt:" + a_.get_str();
      if (b_ > 0) s += "+" + b_.get_str();
      if (b_ < 0) s += "-" + Rational(-b_).get_str();
      return s;
    }
  }
  return {};
}

RealVec3Oracle exact_direction(const Rational& x0, const Rational& x1, const Rational& x2) {
  return [=](unsigned) {
    return std::array<RatInterval, 3>{RatInterval::point(x0), RatInterval::point(x1),
                                      RatInterval::point(x2)};
  };
}

}  // namespace badline
