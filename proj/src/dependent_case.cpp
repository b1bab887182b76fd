#include "badline/dependent_case.hpp"

#include <algorithm>

#include "badline/error.hpp"

namespace badline {

PlaneLattice kernel_lattice(const IVec3& z) {
  ContentSplit cs = primitive_content(z);
  if (cs.content != 1) throw Error(ErrorKind::NotPrimitive, "relation must have content 1");
  IVec3 a, b;
  if (z.x1 == 0 && z.x2 == 0) {
    a = {0, 1, 0};
    b = {0, 0, 1};
  } else {
    Int g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), z.x1.get_mpz_t(), z.x2.get_mpz_t());
    // s*z1 + t*z2 = g; then gcd(z0, g) = 1 makes <a, b> the whole kernel
    a = {Int(0), Int(z.x2 / g), Int(-z.x1 / g)};
    b = {g, Int(-z.x0 * s), Int(-z.x0 * t)};
  }
  return gauss_reduce(PlaneLattice::make(a, b));
}

DependentInstance DependentInstance::make(const IVec3& relation, const RealOracle& free) {
  DependentInstance inst;
  inst.relation = relation;
  inst.lattice = kernel_lattice(relation);
  inst.d_sq = norm_sq(relation);
  inst.free = free;
  if (relation.x1 == 0 && relation.x2 == 0) {
    throw Error(ErrorKind::InvalidArgument, "relation (z0, 0, 0) admits no theta");
  }
  const IVec3 z = relation;
  const RealOracle f = free;
  inst.theta = [z, f](unsigned bits) {
    RatInterval one = RatInterval::point(Rational(1));
    RatInterval t = f.eval(bits);
    if (z.x2 != 0) {
      RatInterval other = Rational(Rational(-1) / Rational(z.x2)) *
                          (RatInterval::point(Rational(z.x0)) + Rational(z.x1) * t);
      return std::array<RatInterval, 3>{one, t, other};
    }
    RatInterval other = RatInterval::point(Rational(-z.x0) / Rational(z.x1));
    return std::array<RatInterval, 3>{one, other, t};
  };
  return inst;
}

std::array<RatInterval, 2> DependentInstance::theta_at(unsigned bits) const {
  auto d = theta(bits);
  return {d[1], d[2]};
}

std::vector<IVec3> leading_best_approximations(const DependentInstance& inst, long count) {
  for (Int q_max = 64; q_max <= Int(1) << 48; q_max *= 2) {
    std::vector<IVec3> ba = best_approximations(inst.lattice, inst.theta, q_max);
    std::vector<IVec3> distinct;
    for (const auto& g : ba) {
      if (distinct.empty() || distinct.back().x0 != g.x0) distinct.push_back(g);
    }
    if (static_cast<long>(distinct.size()) >= count) {
      distinct.resize(static_cast<std::size_t>(count));
      return distinct;
    }
    // a point on the line is never beaten: the sequence has ended
    if (!ba.empty() && line_dist_sq(ba.back(), inst.theta, kStartPrecision).hi == 0) break;
  }
  throw Error(ErrorKind::Infeasible, "too few best approximations below 2^48");
}

namespace {

// Lower bound, in E-coefficient units, of dist(p, l(theta_bar)) / |E|.
Rational transverse_half_width(const DependentInstance& inst, const IVec3& p, const IVec3& E) {
  for (unsigned bits = kStartPrecision; bits <= precision_cap(); bits *= 2) {
    RatInterval dsq = line_dist_sq(p, inst.theta, bits);
    if (dsq.lo > 0) {
      return sqrt_lower(dsq.lo) / sqrt_upper(Rational(norm_sq(E)));
    }
  }
  return 0;
}

}  // namespace

std::vector<DepWitness> chebyshev_witnesses(const DependentInstance& inst, const QVec2& eta,
                                            long nu_max) {
  const IVec3& z = inst.relation;
  if (Rational(z.x0) - Rational(z.x1) * eta.x1 - Rational(z.x2) * eta.x2 != 0) {
    throw Error(ErrorKind::OffLine, "(1, -eta) is not orthogonal to the relation");
  }
  if (nu_max < 2) return {};
  const std::vector<IVec3> g = leading_best_approximations(inst, nu_max);
  const QVec3 eta_bar{Rational(1), Rational(-eta.x1), Rational(-eta.x2)};
  const Rational d_hi = sqrt_upper(Rational(inst.d_sq));

  std::vector<DepWitness> out;
  for (long nu = 2; nu <= nu_max; ++nu) {
    const IVec3& gv = g[static_cast<std::size_t>(nu - 1)];
    const IVec3& gp = g[static_cast<std::size_t>(nu - 2)];
    const PlaneLattice L = rebase_on(inst.lattice, gv);
    const Frame f = frame_of(L);
    const IVec3 zp = complete_to_basis(L.u, L.v);

    // transverse half-width dist(g_{nu-1}, l(theta)), but never below half
    // the spacing of the lattice lines parallel to g_nu
    const Rational gg(norm_sq(gv));
    Rational h = transverse_half_width(inst, gp, f.E);
    if (h < 1 / (2 * gg)) h = 1 / (2 * gg);
    RectSpec rect{eta_bar, Rational(0), Rational(1), Rational(-h), h, Int(0)};

    DepWitness w;
    w.nu = nu;
    w.g = gv;
    w.d_hi = d_hi;
    w.y = find_point_in_level_rect(L, zp, rect);
    w.x = w.y.x0 - 1;
    if (w.x < 1) {
      w.y = w.y + gv;
      w.x += gv.x0;
    }
    const Rational xr(w.x);
    bool decided = false;
    for (unsigned bits = kStartPrecision; bits <= precision_cap(); bits *= 2) {
      auto th = inst.theta_at(bits);
      for (int i = 0; i < 2; ++i) {
        RatInterval c = xr * th[static_cast<std::size_t>(i)] - RatInterval::point(eta[i]);
        RatInterval d = dist_to_int(c);
        if (i == 0 || d.lo > w.err_lo) w.err_lo = d.lo;
        if (i == 0 || d.hi > w.err_hi) w.err_hi = d.hi;
      }
      if (xr * w.err_hi <= 4 * d_hi) {
        w.pass = true;
        decided = true;
        break;
      }
      if (xr * w.err_lo > 4 * d_hi) {
        decided = true;
        break;
      }
    }
    if (!decided) throw Error(ErrorKind::PrecisionExhausted, "witness error did not resolve");
    out.push_back(w);
  }
  return out;
}

Rational rational_theta_gap(const QVec2& theta, const QVec2& eta) {
  Int q;
  mpz_lcm(q.get_mpz_t(), theta.x1.get_den_mpz_t(), theta.x2.get_den_mpz_t());
  Rational gap = 0;
  for (int i = 0; i < 2; ++i) {
    Rational d = dist_to_int(Rational(q) * eta[i]) / Rational(q);
    if (d > gap) gap = d;
  }
  return gap;
}

}  // namespace badline
