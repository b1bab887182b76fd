#pragma once

// Inductive construction of the integer chain z_0, z_1, z_2, ... and of the
// limit vector theta = lim z_nu[1..2] / q_nu.
//
// Each step works in the plane of Lambda = <z_prev, z>. Irrational unit
// vectors are replaced by the integer frame {z, E = N x z, N}:
//   z^a = z + alpha*E,  z^b = z^a + beta*N   (N oriented toward level 1)
// so the effective parameters are a = alpha*|E| = alpha*d*|z| and
// b = beta*|N| = beta*d. The next vector is a level-1 lattice point inside the
// shifted fundamental rectangle placed in the projected cone.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "badline/lattice2d.hpp"
#include "badline/omega.hpp"

namespace badline {

struct StepChecks {
  bool primitive = false;        // det3(z_prev, z, z_next) = +-1
  bool q_increasing = false;     // q_next > q
  bool contraction_cap = false;  // |theta_next - theta|_inf <= cap
  bool height_bound = false;     // d_next <= omega(q_next) / nu
  bool in_cone = false;          // z_next inside the projected cone
  bool alpha_bound = false;      // a_eff * d_sq <= omega(q^2/(d_sq a)) / nu
  bool beta_window = false;      // b_eff in [target/2, target]

  bool exact_ok() const { return primitive && q_increasing && contraction_cap && in_cone; }
  bool operator==(const StepChecks&) const = default;
};

struct StepRecord {
  long nu = 0;
  IVec3 z_prev;  // not serialized; the previous chain element
  IVec3 z;
  Int q;
  IVec3 N;
  Int d_sq;
  IVec3 zp;
  Rational alpha, beta;
  Rational a_eff_sq, b_eff_sq;
  Rational t_shift;
  QVec2 theta;
  Rational contraction;
  Rational cap;
  IVec3 z_next;
  StepChecks checks;
  long plane_retries = 0;
  long alpha_halvings = 0;
};

struct Trace {
  OmegaFn omega;
  std::pair<IVec3, IVec3> seed;
  std::vector<StepRecord> steps;
  Rational eps0{1, 8};
  long forbidden_checked = 10;
  std::optional<long> nu0;

  long last() const { return static_cast<long>(steps.size()); }
  const StepRecord& at(long nu) const { return steps.at(static_cast<std::size_t>(nu - 1)); }
  /// The two most recent chain vectors (z_{nu-1}, z_nu) feeding the next step.
  std::pair<IVec3, IVec3> tip() const;
  /// True when the height bound holds for every nu >= nu0 (and nu0 exists).
  bool height_bound_from_nu0() const;
};

struct StepGeometry {
  PlaneLattice lattice;
  Frame frame;
  QVec3 za, zb, Z;
  Rational t_shift;
  RectSpec rect;
};

/// theta_nu = (z1/q, z2/q).
QVec2 theta_of(const IVec3& z);

/// Per-step contraction cap eps0 * 2^-nu / q^2.
Rational contraction_cap(const Rational& eps0, long nu, const Int& q);

/// Largest alpha = 2^-k (k >= 1) with a_hi*d_sq <= omega_lo(q^2/(d_sq*a_hi))/nu,
/// where a_hi >= alpha*sqrt(d_sq*z_normsq). Throws PrecisionExhausted.
Rational choose_alpha(long nu, const Int& d_sq, const Int& q, const Int& z_normsq,
                      const OmegaFn& omega);

/// beta = 2^j with b_eff = beta*sqrt(d_sq) in [target/2, target],
/// target = a_eff*min(1, sqrt(d_sq)/q).
Rational choose_beta(const Rational& alpha, const Int& d_sq, const Int& q, const Int& z_normsq);

/// z^a, z^b, Z and the level-1 rectangle inside the projected cone.
/// Throws ConeViolation, NotPrimitivePair.
StepGeometry build_step_geometry(const IVec3& z_prev, const IVec3& z, const IVec3& zp,
                                 const Rational& alpha, const Rational& beta);

/// Cone predicate relative to Z: s >= 0 and s <= alpha*t.
bool in_cone(const StepGeometry& g, const Rational& alpha, const QVec3& p);

/// d_next^2 <= (omega_lo(q_next)/nu)^2, decided with refinement.
bool height_bound_holds(const OmegaFn& omega, long nu, const Int& d_sq_next, const Int& q_next);

/// alpha condition: a_hi*d_sq <= omega_lo(q^2/(d_sq*a_hi))/nu.
bool alpha_bound_holds(const OmegaFn& omega, long nu, const Rational& alpha, const Int& d_sq,
                const Int& q, const Int& z_normsq);

/// beta window b_eff in [target/2, target], on squares.
bool beta_window_holds(const Rational& a_eff_sq, const Rational& b_eff_sq, const Int& d_sq,
                const Int& q);

/// True when theta(y) is certified off every plane m0 + m1 x1 + m2 x2 = 0 with
/// 0 < |m|_inf <= bound that a shift y += z could move it away from, against
/// the future tail budget eps0*2^-nu/q_y^2.
bool avoids_planes(const IVec3& y, const IVec3& z, long nu, long bound, const Rational& eps0);

/// One inductive step from the trace tip. Throws StepFailed.
StepRecord advance(const Trace& trace);

/// `steps` inductive steps from the seed pair. Throws NotPrimitivePair,
/// StepFailed.
Trace run_trace(const std::pair<IVec3, IVec3>& seed, const OmegaFn& omega, long steps,
                long indep_bound = 10, const Rational& eps0 = Rational(1, 8));

/// Budget covering every step not in the trace: eps0*2^(-last+1)/q_last^2.
Rational tail_budget(const Trace& trace);

struct ThetaTail {
  QVec2 theta;
  Rational tail;  // |theta_true - theta|_inf <= tail
};

ThetaTail theta_with_tail(const Trace& trace, long nu);

struct Certificate {
  long nu;
  Rational lhs;  // |m0 + m1 theta1 + m2 theta2| at nu
  Rational rhs;  // (|m1| + |m2|) * tail(nu)
};

/// Certificate that 1, theta1, theta2 do not satisfy the relation m.
std::optional<Certificate> certify_independence(const Trace& trace, const IVec3& m);

struct ReplayIssue {
  long nu;
  std::string what;
};

/// Re-derives every step from the serialized fields alone and re-checks the
/// exact invariants. Returns the violations found (empty when sound).
std::vector<ReplayIssue> replay_checks(const Trace& trace);

}  // namespace badline
