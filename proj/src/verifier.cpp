#include "badline/verifier.hpp"

#include <algorithm>
#include <sstream>

#include "badline/error.hpp"

namespace badline {

namespace {

Rational line_value(const IVec3& c, const QVec2& eta) {
  return Rational(c.x0) - Rational(c.x1) * eta.x1 - Rational(c.x2) * eta.x2;
}

const char* yes(bool b) { return b ? "1" : "0"; }

}  // namespace

SegmentSpec segment_of(const Trace& trace) {
  if (trace.steps.empty()) throw Error(ErrorKind::InvalidArgument, "empty trace");
  const auto& last = trace.steps.back();
  return {last.N, {Rational(-last.theta.x1), Rational(-last.theta.x2)}, Rational(1)};
}

std::vector<QVec2> segment_samples(const Trace& trace, long K) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  const SegmentSpec seg = segment_of(trace);
  const QVec2 w{Rational(seg.line.x2), Rational(-seg.line.x1)};
  const Rational len_hi = sqrt_upper(norm_sq(w));
  if (len_hi == 0) throw Error(ErrorKind::InvalidArgument, "degenerate line");
  std::vector<QVec2> out;
  out.reserve(static_cast<std::size_t>(K));
  for (long k = 0; k < K; ++k) {
    Rational p(2 * k - (K - 1), K + 1);
    p.canonicalize();
    out.push_back(seg.center + Rational(p / len_hi) * w);
  }
  return out;
}

QVec2 project_to_line(const IVec3& line, const QVec2& eta) {
  const Int nn = line.x1 * line.x1 + line.x2 * line.x2;
  if (nn == 0) throw Error(ErrorKind::InvalidArgument, "degenerate line");
  const Rational f = line_value(line, eta) / Rational(nn);
  return {eta.x1 + f * line.x1, eta.x2 + f * line.x2};
}

WitnessReport find_witness(const Trace& trace, long nu, const QVec2& eta,
                           const WitnessOptions& opts) {
  if (nu < 2 || nu > trace.last()) throw Error(ErrorKind::InvalidArgument, "nu out of range");
  if (line_value(segment_of(trace).line, eta) != 0) {
    throw Error(ErrorKind::OffLine, "eta is not on the last line");
  }
  const StepRecord& rec = trace.at(nu);
  const PlaneLattice L = PlaneLattice::make(rec.z_prev, rec.z);

  WitnessReport r;
  r.eta = eta;
  r.nu = nu;
  r.eta_nu = project_to_line(rec.N, eta);
  r.eta_bar = {Rational(1), Rational(-r.eta_nu.x1), Rational(-r.eta_nu.x2)};

  const Rational zz(norm_sq(rec.z));
  RectSpec rect{r.eta_bar, Rational(0), Rational(1), Rational(-1 / zz), Rational(1 / zz), Int(0)};
  r.y = find_point_in_level_rect(L, rec.zp, rect);
  r.x = r.y.x0 - 1;
  if (r.x < 1) {
    r.y = r.y + rec.z;
    r.x += rec.q;
  }

  ThetaTail tt = theta_with_tail(trace, trace.last());
  if (opts.truncated) tt.tail = 0;
  const Rational spread = Rational(r.x) * tt.tail;
  for (int i = 0; i < 2; ++i) {
    const Rational c = Rational(r.x) * tt.theta[i] - eta[i];
    RatInterval d = dist_to_int(RatInterval{c - spread, c + spread});
    if (i == 0 || d.lo > r.err_lo) r.err_lo = d.lo;
    if (i == 0 || d.hi > r.err_hi) r.err_hi = d.hi;
  }
  r.nonzero_certified = r.err_lo > 0;

  const Rational xr(r.x);
  for (unsigned bits = kStartPrecision;; bits *= 2) {
    RatInterval w = trace.omega.eval(xr, bits);
    r.bound = w.lo / xr;
    if (r.err_hi < r.bound) {
      r.pass = true;
      break;
    }
    // cannot pass at any precision, or out of budget: fail conservatively
    if (r.err_hi >= w.hi / xr || bits * 2 > precision_cap()) break;
  }
  return r;
}

std::vector<WitnessReport> witness_column(const Trace& trace, const QVec2& eta, long nu_lo,
                                          long nu_hi, const WitnessOptions& opts) {
  std::vector<WitnessReport> out;
  for (long nu = nu_lo; nu <= nu_hi; ++nu) out.push_back(find_witness(trace, nu, eta, opts));
  return out;
}

std::vector<std::pair<long, Rational>> bad_statistic(const std::vector<WitnessReport>& reports) {
  std::vector<std::pair<long, Rational>> out;
  for (const auto& r : reports) {
    Rational s = Rational(r.x) * r.err_hi * r.err_hi;
    if (!out.empty() && out.back().second < s) s = out.back().second;
    out.emplace_back(r.nu, s);
  }
  return out;
}

std::string asymptotics_report(const Trace& trace) {
  std::ostringstream os;
  os << "nu,q_digits,d_sq_digits,sigma_ratio_sq,Z_ratio_sq,q_next_ratio_sq,d_product_sq,"
        "theta_ratio_sq,angle_ratio_sq,height_bound,contraction_cap,in_cone,alpha_bound,"
        "beta_window\n";
  for (const auto& r : trace.steps) {
    const Rational zz(norm_sq(r.z));
    const Rational q_sq(r.q * r.q);
    const Rational d_sq(r.d_sq);
    const Rational d_next_sq(norm_sq(cross(r.z, r.z_next)));
    const Rational q_next(r.z_next.x0);
    StepGeometry g = build_step_geometry(r.z_prev, r.z, r.zp, r.alpha, r.beta);

    const Rational sigma_ratio = q_sq / zz;
    const Rational z_ratio = norm_sq(g.Z) * d_sq * r.b_eff_sq / q_sq;
    const Rational qn_ratio = q_next * q_next * r.a_eff_sq * d_sq * d_sq / (q_sq * q_sq);
    const Rational d_product = d_next_sq * d_sq / q_sq;
    const Rational theta_ratio = r.contraction * r.contraction * q_sq / (r.a_eff_sq + r.b_eff_sq);
    const Rational angle_ratio = (zz / (d_sq * d_next_sq)) / (r.b_eff_sq / r.a_eff_sq);

    os << r.nu << ',' << decimal_digits(r.q) << ',' << decimal_digits(r.d_sq) << ','
       << to_sci(sigma_ratio) << ',' << to_sci(z_ratio) << ',' << to_sci(qn_ratio) << ','
       << to_sci(d_product) << ',' << to_sci(theta_ratio) << ',' << to_sci(angle_ratio) << ','
       << yes(r.checks.height_bound) << ',' << yes(r.checks.contraction_cap) << ','
       << yes(r.checks.in_cone) << ',' << yes(r.checks.alpha_bound) << ','
       << yes(r.checks.beta_window) << '\n';
  }
  return os.str();
}

Rational homogeneous_bound(const Trace& trace, long nu) {
  const StepRecord& r = trace.at(nu);
  Rational e = Rational(r.q) * theta_with_tail(trace, nu).tail;
  if (e > Rational(1, 2)) e = Rational(1, 2);
  return Rational(r.q) * e * e;
}

std::string homogeneous_report(const Trace& trace) {
  std::ostringstream os;
  os << "nu,q_digits,bound\n";
  for (const auto& r : trace.steps) {
    os << r.nu << ',' << decimal_digits(r.q) << ',' << to_sci(homogeneous_bound(trace, r.nu))
       << '\n';
  }
  return os.str();
}

Json witness_to_json(const WitnessReport& r) {
  using namespace json_io;
  Json j;
  j["eta"] = of(r.eta);
  j["nu"] = r.nu;
  j["eta_nu"] = of(r.eta_nu);
  j["eta_bar"] = of(r.eta_bar);
  j["y"] = of(r.y);
  j["x"] = of(r.x);
  j["err_lo"] = of(r.err_lo);
  j["err_hi"] = of(r.err_hi);
  j["bound"] = of(r.bound);
  j["pass"] = r.pass;
  j["nonzero_certified"] = r.nonzero_certified;
  return j;
}

}  // namespace badline
