#pragma once

// Finite-depth witnesses on the exceptional segment and the diagnostic
// tables that go with a trace.
//
// Sign convention: the line P_nu is {eta : (eta_bar, N_nu) = 0} with
// eta_bar = (1, -eta1, -eta2). Since (1, theta_nu) lies in pi_nu, P_nu passes
// through -theta_nu, and the segment D is centred there.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "badline/construction.hpp"
#include "badline/trace_io.hpp"

namespace badline {

struct WitnessReport {
  QVec2 eta;
  long nu = 0;
  QVec2 eta_nu;     // projection of eta onto P_nu
  QVec3 eta_bar;    // (1, -eta_nu)
  IVec3 y;
  Int x;
  Rational err_lo, err_hi;  // enclosure of max_i ||theta_i x - eta_i||
  Rational bound;           // lower bound of omega(x)/x
  bool pass = false;
  bool nonzero_certified = false;
};

struct SegmentSpec {
  IVec3 line;  // (c0, c1, c2): c0 - c1*x1 - c2*x2 = 0
  QVec2 center;
  Rational radius{1};
};

/// D for the last line of the trace.
SegmentSpec segment_of(const Trace& trace);

/// K points of D with parameters (2k - K + 1)/(K + 1), k = 0..K-1, along the
/// line direction normalised by an upper bound on its length.
std::vector<QVec2> segment_samples(const Trace& trace, long K);

/// Exact orthogonal projection onto the line c0 - c1*x1 - c2*x2 = 0.
QVec2 project_to_line(const IVec3& line, const QVec2& eta);

struct WitnessOptions {
  bool truncated = false;  // take theta_M as the exact theta (tail = 0)
};

/// Witness at level nu (2 <= nu <= last) for eta on the last line.
/// Throws OffLine, InvalidArgument, Infeasible.
WitnessReport find_witness(const Trace& trace, long nu, const QVec2& eta,
                           const WitnessOptions& opts = {});

/// Running minimum of x*err_hi^2 over the given levels.
std::vector<std::pair<long, Rational>> bad_statistic(const std::vector<WitnessReport>& reports);

/// Witness rows for every level in [nu_lo, nu_hi], then the statistic.
std::vector<WitnessReport> witness_column(const Trace& trace, const QVec2& eta, long nu_lo,
                                          long nu_hi, const WitnessOptions& opts = {});

std::string asymptotics_report(const Trace& trace);
std::string homogeneous_report(const Trace& trace);

/// Upper bound of q*max_i ||theta_i q||^2 at q = q_nu.
Rational homogeneous_bound(const Trace& trace, long nu);

Json witness_to_json(const WitnessReport& r);

inline constexpr const char* kWitnessCsvHeader =
    "sample,nu,x,x_digits,err_lo,err_hi,bound,pass,nonzero_certified,stat";

}  // namespace badline
