// badline: construct, verify, depcase, game.
//
// Exit codes: 0 success, 1 an invariant or witness check failed, 2 bad input.
// Failures also print one JSON object on stderr.

#include <CLI11.hpp>

#include <chrono>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "badline/dependent_case.hpp"
#include "badline/error.hpp"
#include "badline/game_sim.hpp"
#include "badline/trace_io.hpp"
#include "badline/verifier.hpp"

using namespace badline;

namespace {

constexpr const char* kVersion = "0.1.0";

int report(int code, const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << '\n';
  return code;
}

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::StepFailed:
    case ErrorKind::ConeViolation:
    case ErrorKind::Infeasible:
    case ErrorKind::PrecisionExhausted:
      return 1;
    default:
      return 2;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

IVec3 parse_ivec3(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 3) throw Error(ErrorKind::ParseError, "expected three integers: '" + s + "'");
  IVec3 v;
  for (std::size_t i = 0; i < 3; ++i) {
    Rational r = parse_rational(parts[i]);
    if (r.get_den() != 1) throw Error(ErrorKind::ParseError, "not an integer: '" + parts[i] + "'");
    v[i] = r.get_num();
  }
  return v;
}

QVec2 parse_qvec2(const std::string& s) {
  auto parts = split(s, ',');
  if (parts.size() != 2) throw Error(ErrorKind::ParseError, "expected two rationals: '" + s + "'");
  return {parse_rational(parts[0]), parse_rational(parts[1])};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a, enough to tell inputs apart in a manifest.
std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string stem(const std::string& path) {
  auto dot = path.rfind('.');
  auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

class Manifest {
 public:
  explicit Manifest(std::string command) : start_(std::chrono::steady_clock::now()) {
    j_["command"] = std::move(command);
    j_["version"] = kVersion;
    j_["precision_cap"] = precision_cap();
    j_["parameters"] = Json::object();
    j_["inputs"] = Json::object();
    j_["outputs"] = Json::array();
  }
  Json& params() { return j_["parameters"]; }
  void input(const std::string& path) { j_["inputs"][path] = fnv1a(read_file(path)); }
  void output(const std::string& path) { j_["outputs"].push_back(path); }
  Json& summary() { return j_["summary"]; }
  void save(const std::string& path) {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start_;
    j_["wall_seconds"] = dt.count();
    save_json(path, j_);
  }

 private:
  Json j_;
  std::chrono::steady_clock::time_point start_;
};

// -- construct --------------------------------------------------------------

struct ConstructArgs {
  std::string omega = "log";
  long steps = 10;
  std::string seed = "1,0,0;1,1,0";
  long indep_bound = 10;
  std::string eps0 = "1/8";
  std::string out;
};

int run_construct(const ConstructArgs& a) {
  if (a.steps < 1) throw Error(ErrorKind::InvalidArgument, "--steps must be >= 1");
  auto pair = split(a.seed, ';');
  if (pair.size() != 2) throw Error(ErrorKind::ParseError, "--seed needs two vectors 'a;b'");
  const OmegaFn omega = OmegaFn::parse(a.omega);
  const Rational eps0 = parse_rational(a.eps0);

  Manifest m("construct");
  m.params()["omega"] = omega.name();
  m.params()["steps"] = a.steps;
  m.params()["seed"] = a.seed;
  m.params()["indep_bound"] = a.indep_bound;
  m.params()["eps0"] = a.eps0;

  Trace trace = run_trace({parse_ivec3(pair[0]), parse_ivec3(pair[1])}, omega, a.steps,
                          a.indep_bound, eps0);
  save_json(a.out, trace_to_json(trace));
  m.output(a.out);

  long certified = 0, checked = 0;
  const long B = a.indep_bound;
  for (long m0 = -B; m0 <= B; ++m0) {
    for (long m1 = -B; m1 <= B; ++m1) {
      for (long m2 = -B; m2 <= B; ++m2) {
        if (m0 == 0 && m1 == 0 && m2 == 0) continue;
        ++checked;
        if (certify_independence(trace, IVec3{m0, m1, m2})) ++certified;
      }
    }
  }
  const bool height_bound = trace.height_bound_from_nu0();
  m.summary()["last"] = trace.last();
  m.summary()["q_last_digits"] = decimal_digits(trace.steps.back().q);
  m.summary()["nu0"] = trace.nu0 ? Json(*trace.nu0) : Json(nullptr);
  m.summary()["height_bound_from_nu0"] = height_bound;
  m.summary()["independence_checked"] = checked;
  m.summary()["independence_certified"] = certified;
  m.save(a.out + ".manifest.json");

  if (!height_bound) {
    long first_bad = 0;
    for (const auto& s : trace.steps) {
      if (trace.nu0 && s.nu >= *trace.nu0 && !s.checks.height_bound) {
        first_bad = s.nu;
        break;
      }
    }
    return report(1, "InvariantFailure",
                  "d_{nu+1} <= omega(q_{nu+1})/nu fails at nu = " + std::to_string(first_bad) +
                      " after nu0; trace written anyway");
  }
  if (certified != checked) {
    return report(1, "InvariantFailure",
                  std::to_string(checked - certified) + " relations left uncertified");
  }
  return 0;
}

// -- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string trace;
  long samples = 50;
  long nu_min = 3;
  long nu_max = 0;  // 0: last - 1
  std::string report;
  unsigned threads = 1;
  bool truncated = false;
};

int run_verify(const VerifyArgs& a) {
  Trace trace = trace_from_json(load_json(a.trace));
  if (trace.steps.empty()) throw Error(ErrorKind::InvalidArgument, "trace has no steps");
  const long nu_max = a.nu_max == 0 ? trace.last() - 1 : a.nu_max;
  if (a.nu_min < 2 || a.nu_min > nu_max || nu_max > trace.last()) {
    throw Error(ErrorKind::InvalidArgument, "level range [" + std::to_string(a.nu_min) + ", " +
                                                std::to_string(nu_max) +
                                                "] does not fit the trace");
  }
  if (a.samples < 1) throw Error(ErrorKind::InvalidArgument, "--samples must be >= 1");

  Manifest m("verify");
  m.input(a.trace);
  m.params()["samples"] = a.samples;
  m.params()["nu_min"] = a.nu_min;
  m.params()["nu_max"] = nu_max;
  m.params()["truncated"] = a.truncated;

  const auto samples = segment_samples(trace, a.samples);
  std::vector<std::vector<WitnessReport>> cols(samples.size());
  WitnessOptions opts;
  opts.truncated = a.truncated;
  {
    const unsigned n = std::max(1u, a.threads);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(n);
    for (unsigned w = 0; w < n; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < samples.size(); k += n) {
            cols[k] = witness_column(trace, samples[k], a.nu_min, nu_max, opts);
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::ostringstream csv;
  csv << kWitnessCsvHeader << '\n';
  std::ostringstream bad;
  bad << "sample,nu,stat_running_min\n";
  Json witnesses = Json::array();
  long failed = 0, too_large = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    auto stat = bad_statistic(cols[k]);
    for (std::size_t i = 0; i < cols[k].size(); ++i) {
      const auto& r = cols[k][i];
      if (!r.pass) ++failed;
      if (r.x > trace.at(r.nu).q + 1) ++too_large;
      csv << k << ',' << r.nu << ',' << r.x.get_str() << ',' << decimal_digits(r.x) << ','
          << to_sci(r.err_lo) << ',' << to_sci(r.err_hi) << ',' << to_sci(r.bound) << ','
          << (r.pass ? 1 : 0) << ',' << (r.nonzero_certified ? 1 : 0) << ','
          << to_sci(Rational(r.x) * r.err_hi * r.err_hi) << '\n';
      bad << k << ',' << stat[i].first << ',' << to_sci(stat[i].second) << '\n';
      Json wj = witness_to_json(r);
      wj["sample"] = k;
      witnesses.push_back(std::move(wj));
    }
  }
  const std::string base = stem(a.report);
  write_text(a.report, csv.str());
  write_text(base + "_bad.csv", bad.str());
  write_text(base + "_asymptotics.csv", asymptotics_report(trace));
  write_text(base + "_homogeneous.csv", homogeneous_report(trace));
  save_json(base + "_witnesses.json", witnesses);
  for (const char* suffix : {"", "_bad.csv", "_asymptotics.csv", "_homogeneous.csv",
                             "_witnesses.json"}) {
    m.output(*suffix ? base + suffix : a.report);
  }
  const long total = static_cast<long>(samples.size()) * (nu_max - a.nu_min + 1);
  m.summary()["witnesses"] = total;
  m.summary()["failed"] = failed;
  m.summary()["x_above_1_plus_q"] = too_large;
  m.save(a.report + ".manifest.json");

  if (failed > 0 || too_large > 0) {
    return report(1, "WitnessFailure",
                  std::to_string(failed) + " of " + std::to_string(total) +
                      " witnesses miss omega(x)/x");
  }
  return 0;
}

// -- depcase ----------------------------------------------------------------

struct DepArgs {
  std::string relation;
  std::string theta1;
  std::string eta;
  long nu_max = 6;
  std::string out;
};

int run_depcase(const DepArgs& a) {
  if (a.nu_max < 2) throw Error(ErrorKind::InvalidArgument, "--nu-max must be >= 2");
  auto inst = DependentInstance::make(parse_ivec3(a.relation), RealOracle::parse(a.theta1));
  auto rows = chebyshev_witnesses(inst, parse_qvec2(a.eta), a.nu_max);
  std::ostringstream csv;
  csv << "nu,g0,g1,g2,y0,y1,y2,x,err_lo,err_hi,x_err_hi,four_d_hi,pass\n";
  bool ok = true;
  for (const auto& w : rows) {
    ok = ok && w.pass;
    csv << w.nu << ',' << w.g.x0 << ',' << w.g.x1 << ',' << w.g.x2 << ',' << w.y.x0 << ','
        << w.y.x1 << ',' << w.y.x2 << ',' << w.x << ',' << to_sci(w.err_lo) << ','
        << to_sci(w.err_hi) << ',' << to_sci(Rational(w.x) * w.err_hi) << ','
        << to_sci(Rational(4 * w.d_hi)) << ',' << (w.pass ? 1 : 0) << '\n';
  }
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_text(a.out, csv.str());
  }
  if (!ok) return report(1, "WitnessFailure", "a Chebyshev bound check failed");
  return 0;
}

// -- game -------------------------------------------------------------------

struct GameArgs {
  std::string kind;
  long rounds = 3;
  std::string strategies = "center,center";
  std::string arena = "0,1";
  std::string out;
};

int run_game(const GameArgs& a) {
  auto ends = parse_qvec2(a.arena);
  GameConfig cfg = GameConfig::parse(a.kind, a.rounds, {ends.x1, ends.x2});
  if (auto bad = validate_config(cfg)) throw Error(ErrorKind::InvalidArgument, "config: " + *bad);
  auto names = split(a.strategies, ',');
  if (names.size() != 2) throw Error(ErrorKind::ParseError, "--strategies needs 'a,b'");
  Strategy sa = strategy_by_name(Move::Role::A, names[0]);
  Strategy sb = strategy_by_name(Move::Role::B, names[1]);
  Transcript t = play(cfg, sa, sb);
  const std::string text = transcript_to_json(cfg, t).dump(1) + "\n";
  if (a.out.empty()) {
    std::cout << text;
  } else {
    write_text(a.out, text);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"badline: exceptional lines for inhomogeneous approximation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "run the inductive construction");
  construct->add_option("--omega", ca.omega, "log | loglog | pow:EPS");
  construct->add_option("--steps", ca.steps, "number of inductive steps");
  construct->add_option("--seed", ca.seed, "seed pair 'a0,a1,a2;b0,b1,b2'");
  construct->add_option("--indep-bound", ca.indep_bound, "bound B on |m| for certificates");
  construct->add_option("--eps0", ca.eps0, "contraction budget");
  construct->add_option("--out", ca.out, "trace JSON path")->required();

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "witnesses on the exceptional segment");
  verify->add_option("--trace", va.trace, "trace JSON")->required();
  verify->add_option("--samples", va.samples, "points on the segment");
  verify->add_option("--nu-min", va.nu_min, "first level");
  verify->add_option("--nu-max", va.nu_max, "last level (default: last step - 1)");
  verify->add_option("--report", va.report, "witness CSV path")->required();
  verify->add_option("--threads", va.threads, "worker threads");
  verify->add_flag("--truncated", va.truncated, "treat theta_M as exact");

  DepArgs da;
  auto* depcase = app.add_subcommand("depcase", "linearly dependent theta");
  depcase->add_option("--relation", da.relation, "z0,z1,z2")->required();
  depcase->add_option("--theta1", da.theta1, "sqrt:R[+-C] | rat:P/Q | interval:A,B")->required();
  depcase->add_option("--eta", da.eta, "eta1,eta2")->required();
  depcase->add_option("--nu-max", da.nu_max, "last level");
  depcase->add_option("--out", da.out, "CSV path (default: stdout)");

  GameArgs ga;
  auto* game = app.add_subcommand("game", "finite Schmidt / absolute game");
  game->add_option("--kind", ga.kind, "schmidt:A,B | absolute:B")->required();
  game->add_option("--rounds", ga.rounds, "rounds");
  game->add_option("--strategies", ga.strategies, "A,B from center|left|right|steer:P");
  game->add_option("--arena", ga.arena, "lo,hi");
  game->add_option("--out", ga.out, "transcript JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(2, "UsageError", e.what());
  }

  try {
    if (*construct) return run_construct(ca);
    if (*verify) return run_verify(va);
    if (*depcase) return run_depcase(da);
    if (*game) return run_game(ga);
  } catch (const Error& e) {
    return report(exit_code_for(e.kind()), std::string(to_string(e.kind())), e.what());
  } catch (const std::exception& e) {
    return report(1, "Internal", e.what());
  }
  return 2;
}
