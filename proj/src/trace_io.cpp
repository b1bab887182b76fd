#include "badline/trace_io.hpp"

#include <fstream>
#include <sstream>

#include "badline/error.hpp"

namespace badline {

namespace json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json of(const Int& v) { return v.get_str(); }

Json of(const Rational& r) {
  Json j;
  j["num"] = r.get_num().get_str();
  j["den"] = r.get_den().get_str();
  return j;
}

Json of(const IVec3& v) { return Json::array({of(v.x0), of(v.x1), of(v.x2)}); }
Json of(const QVec3& v) { return Json::array({of(v.x0), of(v.x1), of(v.x2)}); }
Json of(const QVec2& v) { return Json::array({of(v.x1), of(v.x2)}); }

Json of(const OmegaFn& omega) {
  Json j;
  switch (omega.preset()) {
    case OmegaFn::Preset::Log: j["preset"] = "log"; break;
    case OmegaFn::Preset::LogLog: j["preset"] = "loglog"; break;
    case OmegaFn::Preset::Pow:
      j["preset"] = "pow";
      j["eps"] = of(omega.eps());
      break;
  }
  return j;
}

Int to_int(const Json& j) {
  if (!j.is_string()) bad("integer must be a decimal string");
  const std::string s = j.get<std::string>();
  std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
  if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos) {
    bad("not a decimal integer: '" + s + "'");
  }
  return Int(s);
}

Rational to_rational(const Json& j) {
  Int num = to_int(field(j, "num")), den = to_int(field(j, "den"));
  if (den <= 0) bad("rational denominator must be positive");
  Rational r(num, den);
  r.canonicalize();
  if (r.get_den() != den) bad("rational is not in lowest terms");
  return r;
}

IVec3 to_ivec3(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("expected an integer 3-vector");
  return {to_int(j[0]), to_int(j[1]), to_int(j[2])};
}

QVec3 to_qvec3(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("expected a rational 3-vector");
  return {to_rational(j[0]), to_rational(j[1]), to_rational(j[2])};
}

QVec2 to_qvec2(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a rational 2-vector");
  return {to_rational(j[0]), to_rational(j[1])};
}

OmegaFn to_omega(const Json& j) {
  const Json& p = field(j, "preset");
  if (!p.is_string()) bad("omega preset must be a string");
  const std::string name = p.get<std::string>();
  if (name == "log") return OmegaFn::log();
  if (name == "loglog") return OmegaFn::loglog();
  if (name == "pow") {
    try {
      return OmegaFn::pow(to_rational(field(j, "eps")));
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ParseError) throw;
      bad(e.what());
    }
  }
  bad("unknown omega preset '" + name + "'");
}

}  // namespace json_io

namespace {

Json checks_json(const StepChecks& c) {
  Json j;
  j["primitive"] = c.primitive;
  j["q_increasing"] = c.q_increasing;
  j["contraction_cap"] = c.contraction_cap;
  j["height_bound"] = c.height_bound;
  j["in_cone"] = c.in_cone;
  j["alpha_bound"] = c.alpha_bound;
  j["beta_window"] = c.beta_window;
  return j;
}

bool get_bool(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_boolean()) {
    throw Error(ErrorKind::ParseError, std::string("missing boolean '") + key + "'");
  }
  return j.at(key).get<bool>();
}

long get_long(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw Error(ErrorKind::ParseError, std::string("missing integer '") + key + "'");
  }
  return j.at(key).get<long>();
}

const Json& at(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::ParseError, std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

}  // namespace

Json trace_to_json(const Trace& trace) {
  using namespace json_io;
  Json j;
  j["omega"] = of(trace.omega);
  j["seed"] = Json::array({of(trace.seed.first), of(trace.seed.second)});
  j["eps0"] = of(trace.eps0);
  j["forbidden_checked"] = trace.forbidden_checked;
  j["nu0"] = trace.nu0 ? Json(*trace.nu0) : Json(nullptr);
  Json steps = Json::array();
  for (const auto& r : trace.steps) {
    Json s;
    s["nu"] = r.nu;
    s["z"] = of(r.z);
    s["N"] = of(r.N);
    s["d_sq"] = of(r.d_sq);
    s["zp"] = of(r.zp);
    s["alpha"] = of(r.alpha);
    s["beta"] = of(r.beta);
    s["t_shift"] = of(r.t_shift);
    s["theta"] = of(r.theta);
    s["contraction"] = of(r.contraction);
    s["z_next"] = of(r.z_next);
    s["plane_retries"] = r.plane_retries;
    s["alpha_halvings"] = r.alpha_halvings;
    s["checks"] = checks_json(r.checks);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  return j;
}

Trace trace_from_json(const Json& j) {
  using namespace json_io;
  try {
    Trace t;
    t.omega = to_omega(at(j, "omega"));
    const Json& seed = at(j, "seed");
    if (!seed.is_array() || seed.size() != 2) {
      throw Error(ErrorKind::ParseError, "seed must hold two vectors");
    }
    t.seed = {to_ivec3(seed[0]), to_ivec3(seed[1])};
    t.eps0 = to_rational(at(j, "eps0"));
    if (t.eps0 <= 0) throw Error(ErrorKind::ParseError, "eps0 must be positive");
    t.forbidden_checked = get_long(j, "forbidden_checked");
    const Json& nu0 = at(j, "nu0");
    if (!nu0.is_null()) {
      if (!nu0.is_number_integer()) throw Error(ErrorKind::ParseError, "nu0 must be an integer");
      t.nu0 = nu0.get<long>();
    }
    const Json& steps = at(j, "steps");
    if (!steps.is_array()) throw Error(ErrorKind::ParseError, "steps must be an array");
    IVec3 prev = t.seed.first;
    for (const Json& s : steps) {
      StepRecord r;
      r.nu = get_long(s, "nu");
      if (r.nu != t.last() + 1) throw Error(ErrorKind::ParseError, "steps are not consecutive");
      r.z_prev = prev;
      r.z = to_ivec3(at(s, "z"));
      r.q = r.z.x0;
      r.N = to_ivec3(at(s, "N"));
      r.d_sq = to_int(at(s, "d_sq"));
      r.zp = to_ivec3(at(s, "zp"));
      r.alpha = to_rational(at(s, "alpha"));
      r.beta = to_rational(at(s, "beta"));
      if (r.alpha <= 0 || r.beta <= 0) {
        throw Error(ErrorKind::ParseError, "alpha and beta must be positive");
      }
      r.t_shift = to_rational(at(s, "t_shift"));
      r.theta = to_qvec2(at(s, "theta"));
      r.contraction = to_rational(at(s, "contraction"));
      r.z_next = to_ivec3(at(s, "z_next"));
      r.plane_retries = get_long(s, "plane_retries");
      r.alpha_halvings = get_long(s, "alpha_halvings");
      const Json& c = at(s, "checks");
      r.checks.primitive = get_bool(c, "primitive");
      r.checks.q_increasing = get_bool(c, "q_increasing");
      r.checks.contraction_cap = get_bool(c, "contraction_cap");
      r.checks.height_bound = get_bool(c, "height_bound");
      r.checks.in_cone = get_bool(c, "in_cone");
      r.checks.alpha_bound = get_bool(c, "alpha_bound");
      r.checks.beta_window = get_bool(c, "beta_window");
      // derived fields, checked by the replay below
      r.cap = contraction_cap(t.eps0, r.nu, r.q);
      r.a_eff_sq = r.alpha * r.alpha * r.d_sq * norm_sq(r.z);
      r.b_eff_sq = r.beta * r.beta * r.d_sq;
      prev = r.z;
      t.steps.push_back(std::move(r));
    }
    auto issues = replay_checks(t);
    if (!issues.empty()) {
      throw Error(ErrorKind::ParseError, "trace replay failed at step " +
                                             std::to_string(issues.front().nu) + ": " +
                                             issues.front().what);
    }
    std::optional<long> nu0_replay;
    for (const auto& r : t.steps) {
      if (r.checks.height_bound) {
        nu0_replay = r.nu;
        break;
      }
    }
    if (nu0_replay != t.nu0) throw Error(ErrorKind::ParseError, "nu0 does not match the steps");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

void save_json(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << j.dump(1) << '\n';
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path);
}

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

}  // namespace badline
