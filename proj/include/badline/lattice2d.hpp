#pragma once

// Planar sublattices of Z^3 and the exact rectangle machinery used to pick
// lattice points inside shifted fundamental domains.

#include <utility>
#include <vector>

#include "badline/exact_linalg.hpp"
#include "badline/real_oracle.hpp"

namespace badline {

/// <u, v>_Z with normal N = u x v and d_sq = |N|^2 (d = fundamental volume).
struct PlaneLattice {
  IVec3 u, v;
  IVec3 N;
  Int d_sq;

  /// Throws NotPrimitivePair unless content(u x v) = 1.
  static PlaneLattice make(const IVec3& u, const IVec3& v);
};

/// Orthogonal integer frame {z, E = N x z, N}. E stands in for the unit
/// transverse vector scaled by |E| = d*|z|.
struct Frame {
  IVec3 z, E, N;
};

/// anchor + t*z + s*E for t in [t_lo, t_hi], s in [s_lo, s_hi], inside the
/// plane {x : (x, N) = level * (zp, N)}.
struct RectSpec {
  QVec3 anchor;
  Rational t_lo, t_hi;
  Rational s_lo, s_hi;
  Int level;
};

struct FrameCoords {
  Rational t, s;
};

/// Lattice <u_prev, z> and the frame on z. Throws NotPrimitivePair.
std::pair<PlaneLattice, Frame> make_frame(const IVec3& u_prev, const IVec3& z);

/// Frame on L.v, the convention find_point_in_level_rect uses.
Frame frame_of(const PlaneLattice& L);

/// sigma^2 = dist(u_prev, l(z))^2 = d_sq / |z|^2.
Rational sigma_sq(const PlaneLattice& L, const Frame& f);

/// p = anchor + t*z + s*E. Throws OffPlane if (p - anchor, N) != 0.
FrameCoords rect_coords(const Frame& f, const QVec3& anchor, const QVec3& p);

bool rect_contains(const Frame& f, const RectSpec& rect, const IVec3& p);

/// y = level*zp + m*L.u + n*L.v inside rect, smallest m then smallest n.
/// The frame is frame_of(L). Throws NotABasis, OffPlane, Infeasible.
IVec3 find_point_in_level_rect(const PlaneLattice& L, const IVec3& zp, const RectSpec& rect);

/// Lagrange-Gauss reduced basis of the same lattice.
PlaneLattice gauss_reduce(const PlaneLattice& L);

/// Best approximations of the line R*dir by L with heights 1 <= x0 <= q_max,
/// in increasing height. Distances are compared on certified squared-distance
/// intervals with doubling precision. Throws PrecisionExhausted.
std::vector<IVec3> best_approximations(const PlaneLattice& L, const RealVec3Oracle& dir,
                                       const Int& q_max);

/// Enclosure of dist(p, R*dir)^2 at the given oracle precision.
RatInterval line_dist_sq(const IVec3& p, const RealVec3Oracle& dir, unsigned bits);

/// Complete a primitive vector g of L to a basis (u', g) of L.
PlaneLattice rebase_on(const PlaneLattice& L, const IVec3& g);

}  // namespace badline
