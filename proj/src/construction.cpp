#include "badline/construction.hpp"

#include <algorithm>
#include <functional>

#include "badline/error.hpp"

namespace badline {

namespace {

// lhs <= rhs for a refinable rhs. Throws PrecisionExhausted when the
// enclosures never separate.
bool le_refined(const Rational& lhs, const std::function<RatInterval(unsigned)>& rhs) {
  for (unsigned bits = kStartPrecision; bits <= precision_cap(); bits *= 2) {
    RatInterval r = rhs(bits);
    if (lhs <= r.lo) return true;
    if (lhs > r.hi) return false;
  }
  throw Error(ErrorKind::PrecisionExhausted, "comparison against omega did not resolve");
}

Rational sup_dist(const QVec2& a, const QVec2& b) { return norm_inf(a - b); }

Rational min1(const Rational& r) { return r < 1 ? r : Rational(1); }

}  // namespace

std::pair<IVec3, IVec3> Trace::tip() const {
  if (steps.empty()) return seed;
  return {steps.back().z, steps.back().z_next};
}

bool Trace::height_bound_from_nu0() const {
  if (!nu0) return false;
  for (const auto& s : steps) {
    if (s.nu >= *nu0 && !s.checks.height_bound) return false;
  }
  return true;
}

QVec2 theta_of(const IVec3& z) {
  if (z.x0 == 0) throw Error(ErrorKind::InvalidArgument, "theta of a vector with x0 = 0");
  return {make_rational(z.x1, z.x0), make_rational(z.x2, z.x0)};
}

Rational contraction_cap(const Rational& eps0, long nu, const Int& q) {
  return eps0 * pow2(-nu) / Rational(q * q);
}

bool alpha_bound_holds(const OmegaFn& omega, long nu, const Rational& alpha, const Int& d_sq,
                const Int& q, const Int& z_normsq) {
  const Rational a_hi = alpha * sqrt_upper(Rational(d_sq * z_normsq));
  const Rational lhs = a_hi * d_sq * nu;
  const Rational arg = Rational(q * q) / (d_sq * a_hi);
  return le_refined(lhs, [&](unsigned bits) { return omega.eval(arg, bits); });
}

Rational choose_alpha(long nu, const Int& d_sq, const Int& q, const Int& z_normsq,
                      const OmegaFn& omega) {
  if (nu < 1 || d_sq < 1 || q < 1) {
    throw Error(ErrorKind::InvalidArgument, "choose_alpha needs nu, d_sq, q >= 1");
  }
  auto ok = [&](long k) { return alpha_bound_holds(omega, nu, pow2(-k), d_sq, q, z_normsq); };
  if (ok(1)) return pow2(-1);
  // the predicate is monotone in k: gallop, then bisect
  long bad = 1, good = 2;
  while (!ok(good)) {
    bad = good;
    good *= 2;
  }
  while (good - bad > 1) {
    long mid = bad + (good - bad) / 2;
    if (ok(mid)) {
      good = mid;
    } else {
      bad = mid;
    }
  }
  return pow2(-good);
}

Rational choose_beta(const Rational& alpha, const Int& d_sq, const Int& q, const Int& z_normsq) {
  if (alpha <= 0) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
  // beta^2 in [T^2/4, T^2] with T = target / sqrt(d_sq)
  const Rational t_sq = alpha * alpha * z_normsq * min1(Rational(d_sq) / Rational(q * q));
  long e = floor_log2(t_sq);
  long j = e >= 0 ? e / 2 : -((-e + 1) / 2);
  return pow2(j);
}

bool beta_window_holds(const Rational& a_eff_sq, const Rational& b_eff_sq, const Int& d_sq,
                const Int& q) {
  const Rational target_sq = a_eff_sq * min1(Rational(d_sq) / Rational(q * q));
  return target_sq / 4 <= b_eff_sq && b_eff_sq <= target_sq;
}

bool in_cone(const StepGeometry& g, const Rational& alpha, const QVec3& p) {
  FrameCoords c = rect_coords(g.frame, g.Z, p);
  return c.s >= 0 && c.s <= alpha * c.t;
}

StepGeometry build_step_geometry(const IVec3& z_prev, const IVec3& z, const IVec3& zp,
                                 const Rational& alpha, const Rational& beta) {
  auto [L, f] = make_frame(z_prev, z);
  const Int s0 = dot(zp, L.N);
  if (s0 != 1 && s0 != -1) throw Error(ErrorKind::NotABasis, "zp does not complete the pair");

  StepGeometry g{L, f, {}, {}, {}, {}, {}};
  g.za = to_rational(z) + alpha * to_rational(f.E);
  g.zb = g.za + Rational(beta * s0) * to_rational(L.N);
  // central projection onto (x, N) = s0; (zb, N) = beta*s0*d_sq
  g.Z = Rational(Rational(1) / (beta * L.d_sq)) * g.zb;

  const Rational zz(norm_sq(z));
  const Rational t_min = 2 / (alpha * zz);
  long k = floor_log2(t_min);
  g.t_shift = pow2(k) == t_min ? pow2(k) : pow2(k + 1);

  const Rational s_half = 1 / zz;
  for (int attempt = 0;; ++attempt) {
    g.rect.anchor = g.Z + g.t_shift * to_rational(z) + s_half * to_rational(f.E);
    g.rect.t_lo = 0;
    g.rect.t_hi = 1;
    g.rect.s_lo = -s_half;
    g.rect.s_hi = s_half;
    g.rect.level = 1;

    bool inside = true;
    for (int ti = 0; ti < 2 && inside; ++ti) {
      for (int si = 0; si < 2 && inside; ++si) {
        QVec3 corner = g.rect.anchor + Rational(ti) * to_rational(z) +
                       (si == 0 ? g.rect.s_lo : g.rect.s_hi) * to_rational(f.E);
        inside = in_cone(g, alpha, corner);
      }
    }
    if (inside) return g;
    if (attempt >= 64) throw Error(ErrorKind::ConeViolation, "rectangle does not fit in the cone");
    g.t_shift *= 2;
  }
}

bool height_bound_holds(const OmegaFn& omega, long nu, const Int& d_sq_next, const Int& q_next) {
  const Rational lhs = Rational(d_sq_next) * nu * nu;
  return le_refined(lhs, [&](unsigned bits) { return square(omega.eval(Rational(q_next), bits)); });
}

bool avoids_planes(const IVec3& y, const IVec3& z, long nu, long bound, const Rational& eps0) {
  const Int& q = y.x0;
  if (q <= 0) return false;
  // |m . (q, y1, y2)| / q > (|m1|+|m2|) * eps0 * 2^-nu / q^2
  const Rational thr = eps0 * pow2(-nu) / Rational(q);
  const bool integral_only = 2 * bound * thr < 1;
  for (long m1 = -bound; m1 <= bound; ++m1) {
    for (long m2 = -bound; m2 <= bound; ++m2) {
      if (m1 == 0 && m2 == 0) continue;
      const Int yy = m1 * y.x1 + m2 * y.x2;
      const Int zt = m1 * z.x1 + m2 * z.x2;
      const Rational weight = thr * (std::abs(m1) + std::abs(m2));
      for (long m0 = -bound; m0 <= bound; ++m0) {
        if (zt + m0 * z.x0 == 0) continue;  // shifting by z cannot change this one
        const Int k = yy + m0 * q;
        if (integral_only ? k == 0 : Rational(abs(k)) <= weight) return false;
      }
    }
  }
  return true;
}

StepRecord advance(const Trace& trace) {
  const auto [z_prev, z] = trace.tip();
  StepRecord rec;
  rec.nu = trace.last() + 1;
  rec.z_prev = z_prev;
  rec.z = z;
  rec.q = z.x0;
  if (rec.q < 1) throw Error(ErrorKind::StepFailed, "chain vector with q < 1");
  rec.N = cross(z_prev, z);
  rec.d_sq = norm_sq(rec.N);
  rec.zp = complete_to_basis(z_prev, z);
  rec.theta = theta_of(z);
  const Int zz = norm_sq(z);
  rec.cap = contraction_cap(trace.eps0, rec.nu, rec.q);
  rec.alpha = choose_alpha(rec.nu, rec.d_sq, rec.q, zz, trace.omega);

  const long max_retries = 2 * trace.forbidden_checked * trace.forbidden_checked *
                           trace.forbidden_checked;
  StepGeometry geo;
  for (int round = 0;; ++round) {
    if (round > 256) throw Error(ErrorKind::StepFailed, "contraction cap unreachable");
    rec.beta = choose_beta(rec.alpha, rec.d_sq, rec.q, zz);
    geo = build_step_geometry(z_prev, z, rec.zp, rec.alpha, rec.beta);
    IVec3 y = find_point_in_level_rect(geo.lattice, rec.zp, geo.rect);
    rec.plane_retries = 0;
    while (!avoids_planes(y, z, rec.nu, trace.forbidden_checked, trace.eps0)) {
      if (++rec.plane_retries > max_retries) {
        throw Error(ErrorKind::StepFailed, "could not leave the forbidden planes");
      }
      y = y + z;
    }
    rec.z_next = y;
    rec.contraction = sup_dist(theta_of(y), rec.theta);
    if (rec.contraction <= rec.cap) break;
    long halvings = std::max(1L, floor_log2(rec.contraction / rec.cap));
    rec.alpha *= pow2(-halvings);
    rec.alpha_halvings += halvings;
  }
  rec.t_shift = geo.t_shift;
  rec.a_eff_sq = rec.alpha * rec.alpha * rec.d_sq * zz;
  rec.b_eff_sq = rec.beta * rec.beta * rec.d_sq;

  const IVec3& y = rec.z_next;
  const Int det = det3(z_prev, z, y);
  rec.checks.primitive = det == 1 || det == -1;
  rec.checks.q_increasing = y.x0 > rec.q;
  rec.checks.contraction_cap = rec.contraction <= rec.cap;
  rec.checks.in_cone = in_cone(geo, rec.alpha, to_rational(y));
  rec.checks.alpha_bound = alpha_bound_holds(trace.omega, rec.nu, rec.alpha, rec.d_sq, rec.q, zz);
  rec.checks.beta_window = beta_window_holds(rec.a_eff_sq, rec.b_eff_sq, rec.d_sq, rec.q);
  rec.checks.height_bound = height_bound_holds(trace.omega, rec.nu, norm_sq(cross(z, y)), y.x0);
  if (!rec.checks.exact_ok()) {
    throw Error(ErrorKind::StepFailed, "step " + std::to_string(rec.nu) + " failed an exact check");
  }
  return rec;
}

Trace run_trace(const std::pair<IVec3, IVec3>& seed, const OmegaFn& omega, long steps,
                long indep_bound, const Rational& eps0) {
  if (steps < 0) throw Error(ErrorKind::InvalidArgument, "steps must be >= 0");
  if (indep_bound < 0) throw Error(ErrorKind::InvalidArgument, "independence bound must be >= 0");
  if (eps0 <= 0) throw Error(ErrorKind::InvalidArgument, "eps0 must be positive");
  complete_to_basis(seed.first, seed.second);
  if (seed.second.x0 < 1) {
    throw Error(ErrorKind::InvalidArgument, "second seed vector needs x0 >= 1");
  }

  Trace trace;
  trace.omega = omega;
  trace.seed = seed;
  trace.eps0 = eps0;
  trace.forbidden_checked = indep_bound;
  for (long i = 0; i < steps; ++i) {
    StepRecord rec = advance(trace);
    if (!trace.nu0 && rec.checks.height_bound) trace.nu0 = rec.nu;
    trace.steps.push_back(std::move(rec));
  }
  return trace;
}

Rational tail_budget(const Trace& trace) {
  if (trace.steps.empty()) throw Error(ErrorKind::InvalidArgument, "empty trace");
  const Int& q = trace.steps.back().q;
  return trace.eps0 * pow2(-trace.last() + 1) / Rational(q * q);
}

ThetaTail theta_with_tail(const Trace& trace, long nu) {
  if (nu < 1 || nu > trace.last()) throw Error(ErrorKind::InvalidArgument, "nu out of range");
  Rational tail = tail_budget(trace);
  for (long mu = nu; mu < trace.last(); ++mu) tail += trace.at(mu).contraction;
  return {trace.at(nu).theta, tail};
}

std::optional<Certificate> certify_independence(const Trace& trace, const IVec3& m) {
  if (m == IVec3{}) throw Error(ErrorKind::InvalidArgument, "zero relation");
  if (trace.steps.empty()) return std::nullopt;
  // dyadic upper bounds of tail(nu), accumulated from the end
  std::vector<Rational> tails(static_cast<std::size_t>(trace.last()) + 1);
  Rational acc = round_up_dyadic(tail_budget(trace));
  tails.back() = acc;
  for (long nu = trace.last() - 1; nu >= 1; --nu) {
    acc += round_up_dyadic(trace.at(nu).contraction);
    tails[static_cast<std::size_t>(nu)] = acc;
  }
  const Rational weight(abs(m.x1) + abs(m.x2));
  for (long nu = 1; nu <= trace.last(); ++nu) {
    const auto& rec = trace.at(nu);
    Rational lhs = abs(Rational(m.x0 * rec.q + m.x1 * rec.z.x1 + m.x2 * rec.z.x2) / rec.q);
    Rational rhs = weight * tails[static_cast<std::size_t>(nu)];
    if (lhs > rhs) return Certificate{nu, lhs, rhs};
  }
  return std::nullopt;
}

std::vector<ReplayIssue> replay_checks(const Trace& trace) {
  std::vector<ReplayIssue> issues;
  auto flag = [&](long nu, std::string what) { issues.push_back({nu, std::move(what)}); };
  IVec3 z_prev = trace.seed.first, z = trace.seed.second;
  for (const auto& rec : trace.steps) {
    const long nu = rec.nu;
    if (rec.z != z) {
      flag(nu, "z does not continue the chain");
      return issues;
    }
    if (rec.q != z.x0) flag(nu, "q mismatch");
    if (rec.N != cross(z_prev, z)) flag(nu, "N mismatch");
    if (rec.d_sq != norm_sq(rec.N)) flag(nu, "d_sq mismatch");
    try {
      if (rec.zp != complete_to_basis(z_prev, z)) flag(nu, "zp mismatch");
      const Int zz = norm_sq(z);
      const IVec3& y = rec.z_next;
      const Int det = det3(z_prev, z, y);
      if (det != 1 && det != -1) flag(nu, "z_prev, z, z_next not unimodular");
      if (!(y.x0 > z.x0)) flag(nu, "q not increasing");
      if (rec.theta != theta_of(z)) flag(nu, "theta mismatch");
      if (rec.contraction != sup_dist(theta_of(y), theta_of(z))) flag(nu, "contraction mismatch");
      if (rec.cap != contraction_cap(trace.eps0, nu, z.x0)) flag(nu, "cap mismatch");
      if (rec.contraction > rec.cap) flag(nu, "contraction exceeds cap");
      if (rec.a_eff_sq != rec.alpha * rec.alpha * rec.d_sq * zz) flag(nu, "a_eff mismatch");
      if (rec.b_eff_sq != rec.beta * rec.beta * rec.d_sq) flag(nu, "b_eff mismatch");
      StepGeometry g = build_step_geometry(z_prev, z, rec.zp, rec.alpha, rec.beta);
      if (g.t_shift != rec.t_shift) flag(nu, "t_shift mismatch");
      if (!in_cone(g, rec.alpha, to_rational(y))) flag(nu, "z_next outside the cone");
      if (det3(z_prev, z, y) * det3(z_prev, z, rec.zp) != 1) flag(nu, "z_next not on level 1");
      StepChecks c;
      c.primitive = det == 1 || det == -1;
      c.q_increasing = y.x0 > z.x0;
      c.contraction_cap = rec.contraction <= rec.cap;
      c.in_cone = in_cone(g, rec.alpha, to_rational(y));
      c.alpha_bound = alpha_bound_holds(trace.omega, nu, rec.alpha, rec.d_sq, z.x0, zz);
      c.beta_window = beta_window_holds(rec.a_eff_sq, rec.b_eff_sq, rec.d_sq, z.x0);
      c.height_bound = height_bound_holds(trace.omega, nu, norm_sq(cross(z, y)), y.x0);
      if (c != rec.checks) flag(nu, "recorded checks disagree with replay");
    } catch (const Error& e) {
      flag(nu, std::string(to_string(e.kind())) + ": " + e.what());
    }
    z_prev = z;
    z = rec.z_next;
  }
  return issues;
}

}  // namespace badline
