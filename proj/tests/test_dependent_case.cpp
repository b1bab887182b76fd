#include <doctest.h>

#include "badline/dependent_case.hpp"
#include "badline/error.hpp"
#include "oracles.hpp"

using namespace badline;

namespace {

DependentInstance pell() {
  return DependentInstance::make(IVec3{-1, 1, 1}, RealOracle::sqrt_plus(Rational(2), Rational(-1)));
}

// min over 1 <= x <= x_max of max_i ||x theta_i - eta_i||, theta rational
Rational brute_gap(const QVec2& theta, const QVec2& eta, long x_max) {
  Rational best = 1;
  for (long x = 1; x <= x_max; ++x) {
    Rational e = std::max(dist_to_int(Rational(x) * theta.x1 - eta.x1),
                          dist_to_int(Rational(x) * theta.x2 - eta.x2));
    if (e < best) best = e;
  }
  return best;
}

}  // namespace

TEST_SUITE("dependent_case") {
  TEST_CASE("kernel_lattice") {
    for (const IVec3& z : {IVec3{-1, 1, 1}, IVec3{1, 0, 0}, IVec3{3, 5, 7}, IVec3{6, 10, 15},
                           IVec3{0, 4, 9}, IVec3{-5, 0, 3}}) {
      PlaneLattice L = kernel_lattice(z);
      CHECK(dot(L.u, z) == 0);
      CHECK(dot(L.v, z) == 0);
      CHECK((L.N == z || L.N == -z));
      CHECK(L.d_sq == norm_sq(z));
      CHECK(norm_sq(L.u) <= norm_sq(L.v));
    }
    CHECK_THROWS_AS(kernel_lattice(IVec3{2, 2, 2}), Error);
    CHECK_THROWS_AS(kernel_lattice(IVec3{}), Error);
    try {
      kernel_lattice(IVec3{2, 4, 0});
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPrimitive);
    }
  }

  TEST_CASE("instance theta satisfies the relation") {
    DependentInstance inst = pell();
    auto th = inst.theta_at(128);
    RatInterval rel = RatInterval::point(Rational(-1)) + th[0] + th[1];
    CHECK(rel.contains_zero());
    CHECK(rel.width() < pow2(-100));
    CHECK_THROWS_AS(DependentInstance::make(IVec3{1, 0, 0}, RealOracle::exact(Rational(1, 3))),
                    Error);
    // z2 = 0 pins theta1 = -z0/z1 and frees theta2
    DependentInstance flat =
        DependentInstance::make(IVec3{1, -3, 0}, RealOracle::sqrt_plus(Rational(2)));
    auto f = flat.theta_at(64);
    CHECK(f[0].is_point());
    CHECK(f[0].lo == Rational(1, 3));
  }

  TEST_CASE("Pell best approximations") {
    auto g = leading_best_approximations(pell(), 6);
    std::vector<long> h;
    for (const auto& v : g) h.push_back(v.x0.get_si());
    CHECK(h == oracle::pell_heights(70));
  }

  TEST_CASE("Pell witnesses all pass") {
    auto rows = chebyshev_witnesses(pell(), QVec2{Rational(-1, 2), Rational(-1, 2)}, 6);
    REQUIRE(rows.size() == 5);
    for (const auto& w : rows) {
      CHECK(w.pass);
      CHECK(w.x >= 1);
      CHECK(w.err_lo <= w.err_hi);
      CHECK(Rational(w.x) * w.err_hi <= 4 * w.d_hi);
      CHECK(w.d_hi * w.d_hi >= 3);
      // y is on level 0 of the relation and x = y0 - 1
      CHECK(dot(w.y, IVec3{-1, 1, 1}) == 0);
    }
    CHECK(chebyshev_witnesses(pell(), QVec2{Rational(-1, 2), Rational(-1, 2)}, 1).empty());
  }

  TEST_CASE("eta off the line is rejected") {
    try {
      chebyshev_witnesses(pell(), QVec2{Rational(1, 3), Rational(1, 3)}, 4);
      FAIL("expected OffLine");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OffLine);
    }
  }

  TEST_CASE("rational theta: a lattice point has zero error") {
    // relation (1, 0, -1): theta = (1/3, 1); eta = (0, -1) is hit exactly at x = 3
    DependentInstance inst =
        DependentInstance::make(IVec3{1, 0, -1}, RealOracle::exact(Rational(1, 3)));
    auto rows = chebyshev_witnesses(inst, QVec2{Rational(0), Rational(-1)}, 2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].x == 3);
    CHECK(rows[0].err_hi == 0);
    CHECK(rows[0].pass);
  }

  TEST_CASE("rational_theta_gap") {
    CHECK(rational_theta_gap(QVec2{Rational(1, 3), Rational(2, 3)},
                             QVec2{Rational(1, 6), Rational(0)}) == Rational(1, 6));
    CHECK(rational_theta_gap(QVec2{Rational(1, 2), Rational(1, 2)},
                             QVec2{Rational(1, 2), Rational(0)}) == 0);
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
      QVec2 th{oracle::random_rational(rng, 0, 1, 9), oracle::random_rational(rng, 0, 1, 9)};
      QVec2 eta{oracle::random_rational(rng, 0, 1, 23), oracle::random_rational(rng, 0, 1, 23)};
      Int q;
      mpz_lcm(q.get_mpz_t(), th.x1.get_den_mpz_t(), th.x2.get_den_mpz_t());
      CHECK(rational_theta_gap(th, eta) <= brute_gap(th, eta, q.get_si() * 2));
    }
  }
}
