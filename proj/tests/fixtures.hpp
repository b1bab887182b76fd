#pragma once

// Traces shared across test cases; built once per process.

#include "badline/construction.hpp"

namespace fixture {

inline const badline::Trace& reference_trace() {
  static const badline::Trace t = badline::run_trace(
      {badline::IVec3{1, 0, 0}, badline::IVec3{1, 1, 0}}, badline::OmegaFn::log(), 10);
  return t;
}

inline const badline::Trace& short_trace() {
  static const badline::Trace t = badline::run_trace(
      {badline::IVec3{1, 0, 0}, badline::IVec3{1, 1, 0}}, badline::OmegaFn::log(), 5);
  return t;
}

}  // namespace fixture
