#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace badline {

enum class ErrorKind {
  ZeroVector,
  NotPrimitivePair,
  NotPrimitive,
  NotABasis,
  NegativeBound,
  OffPlane,
  Infeasible,
  PrecisionExhausted,
  ConeViolation,
  StepFailed,
  OffLine,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace badline
