#pragma once

// theta_bar = (1, theta1, theta2) satisfying one integer relation
// (z, theta_bar) = 0. Chebyshev-type inhomogeneous witnesses come from the
// best approximations of the line R*theta_bar by Lambda = z^perp cap Z^3.

#include <vector>

#include "badline/lattice2d.hpp"
#include "badline/real_oracle.hpp"

namespace badline {

/// Basis of {x in Z^3 : (x, z) = 0}, Gauss-reduced, with cross(u, v) = +-z.
/// Throws ZeroVector, NotPrimitive.
PlaneLattice kernel_lattice(const IVec3& z);

struct DependentInstance {
  IVec3 relation;
  PlaneLattice lattice;
  Int d_sq;            // |relation|^2
  RealOracle free;     // theta1 when relation.x2 != 0, else theta2
  RealVec3Oracle theta;

  /// Throws NotPrimitive, InvalidArgument (no admissible free coordinate).
  static DependentInstance make(const IVec3& relation, const RealOracle& free);

  /// Enclosures of theta1, theta2 with width about 2^-bits.
  std::array<RatInterval, 2> theta_at(unsigned bits) const;
};

struct DepWitness {
  long nu = 0;
  IVec3 g;       // best approximation g_nu
  IVec3 y;
  Int x;
  Rational err_lo, err_hi;  // enclosure of max_i ||theta_i x - eta_i||
  Rational d_hi;            // upper bound of |relation|
  bool pass = false;        // x * err_hi <= 4 * d_hi
};

/// Best approximations with at least `count` distinct heights, doubling the
/// height bound as needed. Throws Infeasible past 2^48.
std::vector<IVec3> leading_best_approximations(const DependentInstance& inst, long count);

/// One witness per level nu = 2..nu_max. Throws OffLine unless
/// (1, -eta1, -eta2) is orthogonal to the relation; PrecisionExhausted.
std::vector<DepWitness> chebyshev_witnesses(const DependentInstance& inst, const QVec2& eta,
                                            long nu_max);

/// sup-distance from eta to the grid (1/q) Z^2, q the common denominator of
/// theta: a lower bound for max_i ||x theta_i - eta_i|| over all integers x.
Rational rational_theta_gap(const QVec2& theta, const QVec2& eta);

}  // namespace badline
