#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "badline/error.hpp"
#include "badline/verifier.hpp"
#include "fixtures.hpp"

using namespace badline;

namespace {

Rational line_value(const IVec3& c, const QVec2& eta) {
  return Rational(c.x0) - c.x1 * eta.x1 - c.x2 * eta.x2;
}

long count_lines(const std::string& s) { return std::count(s.begin(), s.end(), '\n'); }

}  // namespace

TEST_SUITE("verifier") {
  TEST_CASE("segment and samples") {
    const Trace& t = fixture::short_trace();
    SegmentSpec seg = segment_of(t);
    CHECK(seg.line == t.at(t.last()).N);
    CHECK(line_value(seg.line, seg.center) == 0);
    CHECK(seg.center == QVec2{-t.at(t.last()).theta.x1, -t.at(t.last()).theta.x2});

    auto one = segment_samples(t, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == seg.center);

    auto three = segment_samples(t, 3);
    REQUIRE(three.size() == 3);
    CHECK(three[1] == seg.center);
    // symmetric about the centre, inside the unit segment
    CHECK(three[0] - seg.center == Rational(-1) * (three[2] - seg.center));
    for (const auto& p : segment_samples(t, 17)) {
      CHECK(line_value(seg.line, p) == 0);
      CHECK(norm_sq(p - seg.center) < 1);
    }
    CHECK_THROWS_AS(segment_samples(t, 0), Error);
    Trace empty = run_trace({IVec3{1, 0, 0}, IVec3{1, 1, 0}}, OmegaFn::log(), 0);
    CHECK_THROWS_AS(segment_of(empty), Error);
  }

  TEST_CASE("project_to_line") {
    const IVec3 c{3, -2, 5};
    const QVec2 eta{Rational(1, 7), Rational(-4, 3)};
    QVec2 p = project_to_line(c, eta);
    CHECK(line_value(c, p) == 0);
    CHECK(project_to_line(c, p) == p);
    // the offset is normal to the line
    QVec2 d = p - eta;
    CHECK(d.x1 * c.x2 - d.x2 * c.x1 == 0);
    CHECK_THROWS_AS(project_to_line(IVec3{1, 0, 0}, eta), Error);
  }

  TEST_CASE("witness fields and error enclosure") {
    const Trace& t = fixture::short_trace();
    const QVec2& th = t.at(t.last()).theta;
    for (const QVec2& eta : segment_samples(t, 5)) {
      for (long nu = 2; nu <= t.last(); ++nu) {
        WitnessReport r = find_witness(t, nu, eta);
        WitnessReport tr = find_witness(t, nu, eta, {true});
        CHECK(r.x >= 1);
        CHECK(r.x == r.y.x0 - 1);
        CHECK(r.x <= 2 * t.at(nu).q + 2);
        CHECK(line_value(t.at(nu).N, r.eta_nu) == 0);
        CHECK(r.eta_bar == QVec3{Rational(1), -r.eta_nu.x1, -r.eta_nu.x2});
        // y sits in the lattice of level nu
        CHECK(det3(t.at(nu).z_prev, t.at(nu).z, r.y) == 0);
        // the truncated error is exact, and lies inside the full enclosure
        Rational exact = std::max(dist_to_int(Rational(r.x) * th.x1 - eta.x1),
                                  dist_to_int(Rational(r.x) * th.x2 - eta.x2));
        CHECK(tr.err_lo == exact);
        CHECK(tr.err_hi == exact);
        CHECK(r.err_lo <= exact);
        CHECK(exact <= r.err_hi);
        CHECK(r.nonzero_certified == (r.err_lo > 0));
        CHECK(r.pass == (r.err_hi < r.bound));
        CHECK(r.bound > 0);
      }
    }
  }

  TEST_CASE("truncated identity at the last level") {
    const Trace& t = fixture::short_trace();
    const StepRecord& s = t.at(t.last());
    const QVec2 eta{-s.theta.x1, -s.theta.x2};
    const Rational x(s.q - 1);
    CHECK(dist_to_int(x * s.theta.x1 - eta.x1) == 0);
    CHECK(dist_to_int(x * s.theta.x2 - eta.x2) == 0);
  }

  TEST_CASE("witness errors") {
    const Trace& t = fixture::short_trace();
    const QVec2 c = segment_of(t).center;
    try {
      find_witness(t, 2, c + QVec2{Rational(1, 1000), Rational(0)});
      FAIL("expected OffLine");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::OffLine);
    }
    CHECK_THROWS_AS(find_witness(t, 1, c), Error);
    CHECK_THROWS_AS(find_witness(t, t.last() + 1, c), Error);
  }

  TEST_CASE("bad statistic is a running minimum") {
    const Trace& t = fixture::short_trace();
    auto col = witness_column(t, segment_of(t).center, 2, t.last());
    REQUIRE(col.size() == static_cast<std::size_t>(t.last() - 1));
    auto stat = bad_statistic(col);
    REQUIRE(stat.size() == col.size());
    for (std::size_t i = 0; i < stat.size(); ++i) {
      CHECK(stat[i].first == col[i].nu);
      CHECK(stat[i].second <= Rational(col[i].x) * col[i].err_hi * col[i].err_hi);
      if (i > 0) CHECK(stat[i].second <= stat[i - 1].second);
    }
    CHECK(bad_statistic({}).empty());
  }

  TEST_CASE("reports") {
    const Trace& t = fixture::short_trace();
    std::string a = asymptotics_report(t);
    CHECK(count_lines(a) == t.last() + 1);
    CHECK(a.rfind("nu,q_digits,d_sq_digits,sigma_ratio_sq,", 0) == 0);
    std::string h = homogeneous_report(t);
    CHECK(count_lines(h) == t.last() + 1);
    CHECK(h.rfind("nu,q_digits,bound\n", 0) == 0);
    for (long nu = 1; nu <= t.last(); ++nu) {
      Rational b = homogeneous_bound(t, nu);
      CHECK(b >= 0);
      CHECK(b <= Rational(t.at(nu).q) / 4);
    }
    WitnessReport r = find_witness(t, 2, segment_of(t).center);
    Json j = witness_to_json(r);
    CHECK(j["nu"] == 2);
    CHECK(json_io::to_int(j["x"]) == r.x);
    CHECK(json_io::to_rational(j["err_hi"]) == r.err_hi);
    CHECK(j["pass"] == r.pass);
  }
}
