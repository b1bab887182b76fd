#include "badline/lattice2d.hpp"

#include <algorithm>
#include <optional>
#include <tuple>

#include "badline/error.hpp"

namespace badline {

PlaneLattice PlaneLattice::make(const IVec3& u, const IVec3& v) {
  if (!is_primitive_pair(u, v)) {
    throw Error(ErrorKind::NotPrimitivePair, "lattice basis is not a primitive pair");
  }
  PlaneLattice L{u, v, cross(u, v), Int(0)};
  L.d_sq = norm_sq(L.N);
  return L;
}

Frame frame_of(const PlaneLattice& L) { return Frame{L.v, cross(L.N, L.v), L.N}; }

std::pair<PlaneLattice, Frame> make_frame(const IVec3& u_prev, const IVec3& z) {
  PlaneLattice L = PlaneLattice::make(u_prev, z);
  return {L, frame_of(L)};
}

Rational sigma_sq(const PlaneLattice& L, const Frame& f) {
  return make_rational(L.d_sq, norm_sq(f.z));
}

FrameCoords rect_coords(const Frame& f, const QVec3& anchor, const QVec3& p) {
  QVec3 d = p - anchor;
  if (dot(d, f.N) != 0) throw Error(ErrorKind::OffPlane, "point is off the frame plane");
  return {Rational(dot(d, f.z) / Rational(norm_sq(f.z))),
          Rational(dot(d, f.E) / Rational(norm_sq(f.E)))};
}

bool rect_contains(const Frame& f, const RectSpec& rect, const IVec3& p) {
  QVec3 d = to_rational(p) - rect.anchor;
  if (dot(d, f.N) != 0) return false;
  FrameCoords c = rect_coords(f, rect.anchor, to_rational(p));
  return rect.t_lo <= c.t && c.t <= rect.t_hi && rect.s_lo <= c.s && c.s <= rect.s_hi;
}

IVec3 find_point_in_level_rect(const PlaneLattice& L, const IVec3& zp, const RectSpec& rect) {
  Int det = det3(L.u, L.v, zp);
  if (det != 1 && det != -1) throw Error(ErrorKind::NotABasis, "det3(u, v, zp) is not +-1");
  if (rect.t_lo > rect.t_hi || rect.s_lo > rect.s_hi) {
    throw Error(ErrorKind::Infeasible, "empty rectangle");
  }
  const Frame f = frame_of(L);
  const IVec3 base = rect.level * zp;
  if (dot(rect.anchor, f.N) != Rational(dot(base, f.N))) {
    throw Error(ErrorKind::OffPlane, "rectangle anchor is not on its level plane");
  }

  const Rational zz(norm_sq(f.z)), ee(norm_sq(f.E));
  const QVec3 rel = to_rational(base) - rect.anchor;

  // s depends on m only: s = (cs + m*(u,E)) / |E|^2, and (u,E) = -d_sq.
  const Rational cs = dot(rel, f.E);
  const Int ue = dot(L.u, f.E);
  Rational m_a = (rect.s_lo * ee - cs) / ue;
  Rational m_b = (rect.s_hi * ee - cs) / ue;
  if (ue < 0) std::swap(m_a, m_b);
  const Int m_lo = ceil(m_a), m_hi = floor(m_b);

  // feasibility of n depends on m only modulo this period
  const Int uz = dot(L.u, f.z);
  Int g;
  mpz_gcd(g.get_mpz_t(), uz.get_mpz_t(), Int(norm_sq(f.z)).get_mpz_t());
  const Int period = Int(norm_sq(f.z)) / g;
  const Int m_end = std::min(m_hi, Int(m_lo + period - 1));

  const Rational ct0 = dot(rel, f.z);
  for (Int m = m_lo; m <= m_end; ++m) {
    Rational ct = ct0 + Rational(m * uz);
    Int n_lo = ceil((rect.t_lo * zz - ct) / zz);
    Int n_hi = floor((rect.t_hi * zz - ct) / zz);
    if (n_lo <= n_hi) return base + m * L.u + n_lo * L.v;
  }
  throw Error(ErrorKind::Infeasible, "no lattice point of the level lies in the rectangle");
}

PlaneLattice gauss_reduce(const PlaneLattice& L) {
  IVec3 u = L.u, v = L.v;
  detail::lagrange_reduce(u, v);
  return PlaneLattice::make(u, v);
}

PlaneLattice rebase_on(const PlaneLattice& L, const IVec3& g) {
  // g = a*u + b*v
  Int a_num = dot(cross(g, L.v), L.N), b_num = dot(cross(L.u, g), L.N);
  if (a_num % L.d_sq != 0 || b_num % L.d_sq != 0) {
    throw Error(ErrorKind::OffPlane, "vector is not in the lattice");
  }
  Int a = a_num / L.d_sq, b = b_num / L.d_sq;
  Int gg, s, t;
  mpz_gcdext(gg.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (gg != 1) throw Error(ErrorKind::NotPrimitive, "vector is not primitive in the lattice");
  IVec3 u2 = Int(-t) * L.u + s * L.v;
  return PlaneLattice::make(u2, g);
}

RatInterval line_dist_sq(const IVec3& p, const RealVec3Oracle& dir, unsigned bits) {
  auto D = dir(bits);
  RatInterval dd = square(D[0]) + square(D[1]) + square(D[2]);
  RatInterval pd = Rational(p.x0) * D[0] + Rational(p.x1) * D[1] + Rational(p.x2) * D[2];
  RatInterval f = RatInterval::point(Rational(norm_sq(p))) - square(pd) / dd;
  if (f.lo < 0) f.lo = 0;
  return f;
}

namespace {

struct Undecided {};

struct Candidate {
  IVec3 p;
  RatInterval f;
};

// Certified strict a < b, certified not-less, or undecided.
enum class Cmp { Less, NotLess, Unknown };

Cmp compare_less(const RatInterval& a, const RatInterval& b) {
  if (a.hi < b.lo) return Cmp::Less;
  if (a.lo >= b.hi) return Cmp::NotLess;
  return Cmp::Unknown;
}

std::vector<IVec3> best_approx_at(const PlaneLattice& L, const RealVec3Oracle& dir,
                                  const Int& q_max, unsigned bits) {
  std::vector<IVec3> out;
  Int g0, s, t;
  mpz_gcdext(g0.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), L.u.x0.get_mpz_t(),
             L.v.x0.get_mpz_t());
  if (g0 == 0) return out;
  if (g0 < 0) {
    g0 = -g0;
    s = -s;
    t = -t;
  }
  const IVec3 p1 = s * L.u + t * L.v;  // height g0
  const IVec3 w = Int(L.v.x0 / g0) * L.u - Int(L.u.x0 / g0) * L.v;  // height 0

  auto D = dir(bits);
  auto dot_d = [&](const IVec3& p) {
    return Rational(p.x0) * D[0] + Rational(p.x1) * D[1] + Rational(p.x2) * D[2];
  };
  const RatInterval dd = square(D[0]) + square(D[1]) + square(D[2]);
  const RatInterval wd = dot_d(w);
  const RatInterval A = RatInterval::point(Rational(norm_sq(w))) - square(wd) / dd;
  if (A.lo <= 0) throw Undecided{};

  auto dist = [&](const IVec3& p) {
    RatInterval f = RatInterval::point(Rational(norm_sq(p))) - square(dot_d(p)) / dd;
    if (f.lo < 0) f.lo = 0;
    return f;
  };

  std::optional<RatInterval> best;
  for (Int h = g0; h <= q_max; h += g0) {
    const IVec3 ph = Int(h / g0) * p1;
    RatInterval B = RatInterval::point(Rational(dot(ph, w))) - dot_d(ph) * wd / dd;
    RatInterval kstar = -B / A;
    Int k_lo = floor(kstar.lo), k_hi = ceil(kstar.hi);
    if (k_hi - k_lo > 16) throw Undecided{};

    std::vector<Candidate> cands;
    for (Int k = k_lo; k <= k_hi; ++k) {
      IVec3 p = ph + k * w;
      cands.push_back({p, dist(p)});
    }
    // minimal candidates at this height: a certified winner, or exact ties
    auto lead = std::min_element(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
      return a.f.hi < b.f.hi;
    });
    std::vector<Candidate> mins{*lead};
    for (auto it = cands.begin(); it != cands.end(); ++it) {
      if (it == lead || it->f.lo > lead->f.hi) continue;
      if (it->f.is_point() && lead->f.is_point() && it->f.lo == lead->f.lo) {
        mins.push_back(*it);
        continue;
      }
      throw Undecided{};
    }
    std::sort(mins.begin(), mins.end(), [](const auto& a, const auto& b) {
      return std::tie(a.p.x0, a.p.x1, a.p.x2) < std::tie(b.p.x0, b.p.x1, b.p.x2);
    });
    const RatInterval fmin = mins.front().f;
    bool record = false;
    if (!best) {
      record = true;
    } else {
      Cmp r = compare_less(fmin, *best);
      if (r == Cmp::Unknown) {
        if (!(fmin.is_point() && best->is_point())) throw Undecided{};
        r = fmin.lo < best->lo ? Cmp::Less : Cmp::NotLess;
      }
      record = r == Cmp::Less;
    }
    if (record) {
      best = fmin;
      for (const auto& c : mins) out.push_back(c.p);
    }
  }
  return out;
}

}  // namespace

std::vector<IVec3> best_approximations(const PlaneLattice& L, const RealVec3Oracle& dir,
                                       const Int& q_max) {
  if (q_max < 1) throw Error(ErrorKind::InvalidArgument, "q_max must be >= 1");
  for (unsigned bits = kStartPrecision; bits <= precision_cap(); bits *= 2) {
    try {
      return best_approx_at(L, dir, q_max, bits);
    } catch (const Undecided&) {
    }
  }
  throw Error(ErrorKind::PrecisionExhausted, "best_approximations: distances not separable");
}

}  // namespace badline
