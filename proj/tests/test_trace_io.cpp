#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "badline/error.hpp"
#include "badline/trace_io.hpp"
#include "fixtures.hpp"

using namespace badline;

namespace {

bool parse_fails(const Json& j) {
  try {
    trace_from_json(j);
  } catch (const Error& e) {
    return e.kind() == ErrorKind::ParseError;
  }
  return false;
}

}  // namespace

TEST_SUITE("trace_io") {
  TEST_CASE("scalar encodings") {
    using namespace json_io;
    CHECK(of(Int(-12)) == Json("-12"));
    CHECK(to_int(Json("123456789012345678901234567890")) ==
          Int("123456789012345678901234567890"));
    CHECK(to_rational(of(Rational(-3, 4))) == Rational(-3, 4));
    CHECK(of(Rational(2)).dump() == R"({"num":"2","den":"1"})");
    CHECK_THROWS_AS(to_int(Json(12)), Error);
    CHECK_THROWS_AS(to_int(Json("1e5")), Error);
    CHECK_THROWS_AS(to_int(Json("-")), Error);
    CHECK_THROWS_AS(to_rational(Json::parse(R"({"num":"2","den":"4"})")), Error);
    CHECK_THROWS_AS(to_rational(Json::parse(R"({"num":"2","den":"-1"})")), Error);
    CHECK_THROWS_AS(to_rational(Json::parse(R"({"num":"2"})")), Error);
    CHECK(to_ivec3(of(IVec3{1, -2, 3})) == IVec3{1, -2, 3});
    CHECK_THROWS_AS(to_ivec3(Json::array({"1", "2"})), Error);
    CHECK(to_omega(of(OmegaFn::pow(Rational(1, 5)))) == OmegaFn::pow(Rational(1, 5)));
    CHECK(to_omega(of(OmegaFn::loglog())) == OmegaFn::loglog());
    CHECK_THROWS_AS(to_omega(Json::parse(R"({"preset":"pow","eps":{"num":"1","den":"2"}})")),
                    Error);
    CHECK_THROWS_AS(to_omega(Json::parse(R"({"preset":"exp"})")), Error);
  }

  TEST_CASE("trace round trip") {
    const Trace& t = fixture::short_trace();
    Json j = trace_to_json(t);
    Trace back = trace_from_json(j);
    CHECK(trace_to_json(back).dump() == j.dump());
    CHECK(back.last() == t.last());
    CHECK(back.nu0 == t.nu0);
    for (long nu = 1; nu <= t.last(); ++nu) {
      CHECK(back.at(nu).z_next == t.at(nu).z_next);
      CHECK(back.at(nu).a_eff_sq == t.at(nu).a_eff_sq);
      CHECK(back.at(nu).cap == t.at(nu).cap);
      CHECK(back.at(nu).checks == t.at(nu).checks);
    }
  }

  TEST_CASE("file round trip") {
    const auto path = std::filesystem::temp_directory_path() / "badline_trace_io_test.json";
    save_json(path.string(), trace_to_json(fixture::short_trace()));
    Trace back = trace_from_json(load_json(path.string()));
    CHECK(back.last() == fixture::short_trace().last());
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_json(path.string()), Error);
  }

  TEST_CASE("corrupted traces are rejected") {
    const Json good = trace_to_json(fixture::short_trace());

    Json a = good;
    a["steps"][1]["d_sq"] = "12345";
    CHECK(parse_fails(a));

    Json b = good;
    b["steps"][2]["z_next"][0] = "999";
    CHECK(parse_fails(b));

    Json c = good;
    c["steps"][0].erase("alpha");
    CHECK(parse_fails(c));

    Json d = good;
    d["steps"][0]["alpha"] = Json::parse(R"({"num":"2","den":"4"})");
    CHECK(parse_fails(d));

    Json e = good;
    e["nu0"] = 5;
    CHECK(parse_fails(e));

    Json f = good;
    f["steps"][3]["checks"]["beta_window"] = !f["steps"][3]["checks"]["beta_window"].get<bool>();
    CHECK(parse_fails(f));

    Json g = good;
    g["omega"]["preset"] = "loglog";
    CHECK(parse_fails(g));

    Json h = good;
    h["steps"][1]["nu"] = 7;
    CHECK(parse_fails(h));

    CHECK(parse_fails(Json::array()));
    CHECK(parse_fails(Json::parse("{}")));
  }
}
