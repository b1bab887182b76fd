// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>
#include <string>

#include "badline/dependent_case.hpp"
#include "badline/error.hpp"
#include "badline/game_sim.hpp"
#include "badline/verifier.hpp"
#include "oracles.hpp"

using namespace badline;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void guarded(int n, F&& body) {
  try {
    body();
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

const Trace& reference() {
  static const Trace t =
      run_trace({IVec3{1, 0, 0}, IVec3{1, 1, 0}}, OmegaFn::log(), 10, 10, Rational(1, 8));
  return t;
}

void construction_soundness() {
  auto t0 = Clock::now();
  const Trace& t = reference();
  const double secs = seconds_since(t0);
  long exact_ok = 0, bound_from = 0, bound_needed = 0;
  std::string bound_map;
  for (const auto& s : t.steps) {
    exact_ok += s.checks.exact_ok();
    bound_map += s.checks.height_bound ? '1' : '0';
    if (t.nu0 && s.nu >= *t.nu0) {
      ++bound_needed;
      bound_from += s.checks.height_bound;
    }
  }
  const bool nu0_ok = t.nu0 && *t.nu0 <= 4;
  const bool ok = secs < 60 && exact_ok == t.last() && nu0_ok && t.height_bound_from_nu0() &&
                  replay_checks(t).empty();
  std::ostringstream os;
  os << "time=" << secs << "s exact_checks=" << exact_ok << "/" << t.last()
     << " nu0=" << (t.nu0 ? std::to_string(*t.nu0) : "none")
     << " height_bound[nu=1..10]=" << bound_map
     << " height_bound_from_nu0=" << bound_from << "/" << bound_needed
     << " q_10_digits=" << decimal_digits(t.at(10).q);
  report(1, ok, os.str());
}

struct SampleResult {
  long witnesses = 0, pass = 0, x_small = 0;
  bool decay = false, final_ok = false;
  Rational ratio;  // stat(9) / stat(3)
};

SampleResult check_sample(const Trace& t, const QVec2& eta) {
  SampleResult r;
  std::vector<WitnessReport> col = witness_column(t, eta, 3, 9);
  for (const auto& w : col) {
    ++r.witnesses;
    r.pass += w.pass && w.err_hi < w.bound;
    r.x_small += w.x <= 1 + t.at(w.nu).q;
  }
  auto stat = [](const WitnessReport& w) -> Rational {
    return Rational(w.x) * w.err_hi * w.err_hi;
  };
  const Rational s3 = stat(col.front()), s9 = stat(col.back());
  r.ratio = s3 == 0 ? Rational(0) : Rational(s9 / s3);
  r.decay = 10 * s9 <= s3;
  const Int& q9 = t.at(9).q;
  const Rational w_hi = t.omega.hi(Rational(q9));
  r.final_ok = s9 <= w_hi * w_hi / Rational(q9);
  return r;
}

std::vector<SampleResult> sample_results;

void collect_samples() {
  const Trace& t = reference();
  const auto samples = segment_samples(t, 50);
  std::vector<std::future<SampleResult>> jobs;
  for (const auto& eta : samples) {
    jobs.push_back(std::async(std::launch::async, [&t, eta] { return check_sample(t, eta); }));
  }
  for (auto& j : jobs) sample_results.push_back(j.get());
}

void witnesses() {
  long total = 0, pass = 0, x_small = 0;
  for (const auto& r : sample_results) {
    total += r.witnesses;
    pass += r.pass;
    x_small += r.x_small;
  }
  const bool ok = total == 350 && pass == total && x_small == total;
  std::ostringstream os;
  os << "err_hi<omega_lo(x)/x: " << pass << "/" << total << "  x<=1+q: " << x_small << "/"
     << total;
  report(2, ok, os.str());
}

void statistic_decay() {
  long decay = 0, final_ok = 0;
  Rational worst = 0, best = -1;
  for (const auto& r : sample_results) {
    decay += r.decay;
    final_ok += r.final_ok;
    if (r.ratio > worst) worst = r.ratio;
    if (best < 0 || r.ratio < best) best = r.ratio;
  }
  const long n = static_cast<long>(sample_results.size());
  const bool ok = n == 50 && decay == n && final_ok == n;
  std::ostringstream os;
  os << "10x decay nu=3->9: " << decay << "/" << n << "  final bound: " << final_ok << "/" << n
     << "  stat9/stat3 in [" << to_sci(best, 3) << ", " << to_sci(worst, 3) << "]";
  report(3, ok, os.str());
}

void oracle_equivalence() {
  std::mt19937_64 rng(4242);
  long feasible = 0, infeasible = 0, agree = 0, member = 0, same_point = 0, seen = 0;
  while (feasible < 500) {
    auto inst = oracle::random_rect_instance(rng);
    auto brute = oracle::brute_find_point(inst);
    std::optional<IVec3> got;
    try {
      got = find_point_in_level_rect(inst.L, inst.zp, inst.rect);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Infeasible) throw;
    }
    ++seen;
    agree += got.has_value() == brute.has_value();
    if (!brute) {
      ++infeasible;
      continue;
    }
    ++feasible;
    if (got) {
      member += oracle::in_rect(inst.L, inst.rect, *got) &&
                level_index(inst.L.u, inst.L.v, inst.zp, *got) == inst.rect.level;
      auto [m, n] = oracle::coords_of(inst, *got);
      same_point += m == brute->m && n == brute->n;
    }
  }
  const bool ok = agree == seen && member == feasible && same_point == feasible;
  std::ostringstream os;
  os << "verdicts agree " << agree << "/" << seen << " (" << infeasible
     << " infeasible); membership " << member << "/" << feasible << "; same (m,n) " << same_point
     << "/" << feasible;
  report(4, ok, os.str());
}

void dependent_case() {
  auto t0 = Clock::now();
  DependentInstance inst =
      DependentInstance::make(IVec3{-1, 1, 1}, RealOracle::sqrt_plus(Rational(2), Rational(-1)));
  std::vector<long> heights;
  for (const auto& g : best_approximations(inst.lattice, inst.theta, 100)) {
    heights.push_back(g.x0.get_si());
  }
  const std::vector<long> expect{1, 2, 5, 12, 29, 70};
  const bool oracle_ok = oracle::pell_heights(100, 128) == expect;
  auto rows = chebyshev_witnesses(inst, QVec2{Rational(-1, 2), Rational(-1, 2)}, 6);
  long pass = 0;
  Rational worst = 0;
  for (const auto& w : rows) {
    pass += w.pass && Rational(w.x) * w.err_hi <= 4 * w.d_hi;
    Rational v = Rational(w.x) * w.err_hi;
    if (v > worst) worst = v;
  }
  const double secs = seconds_since(t0);
  const bool ok = heights == expect && oracle_ok && !rows.empty() &&
                  pass == static_cast<long>(rows.size()) && secs < 10;
  std::ostringstream os;
  os << "heights=";
  for (std::size_t i = 0; i < heights.size(); ++i) os << (i ? "," : "") << heights[i];
  os << (oracle_ok ? " (oracle agrees)" : " (oracle disagrees)") << "; witnesses " << pass << "/"
     << rows.size() << " max x*err=" << to_sci(worst, 3) << " <= 4|z|; time=" << secs << "s";
  report(5, ok, os.str());
}

void independence() {
  const Trace& t = reference();
  long checked = 0, certified = 0;
  for (long m0 = -10; m0 <= 10; ++m0) {
    for (long m1 = -10; m1 <= 10; ++m1) {
      for (long m2 = -10; m2 <= 10; ++m2) {
        if (m0 == 0 && m1 == 0 && m2 == 0) continue;
        ++checked;
        certified += certify_independence(t, IVec3{m0, m1, m2}).has_value();
      }
    }
  }
  report(6, checked == 9260 && certified == checked,
         "certified " + std::to_string(certified) + "/" + std::to_string(checked));
}

void game_rules() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> nd(1, 15), rd(1, 10);
  long shrink_ok = 0, shrink_n = 0;
  while (shrink_n < 20) {
    Rational a = oracle::random_rational(rng, 0, 1, 50), b = oracle::random_rational(rng, 0, 1, 50);
    if (a == 0 || a == 1 || b == 0 || b == 1) continue;
    GameConfig cfg;
    cfg.kind = GameConfig::Kind::Schmidt;
    cfg.alpha = a;
    cfg.beta = b;
    cfg.arena = {Rational(-1, 3), Rational(2)};
    const long n = nd(rng);
    Rational expect = cfg.arena.length();
    for (long k = 1; k < n; ++k) expect *= a * b;
    ++shrink_n;
    shrink_ok += shrink_after(cfg, n) == expect;
  }

  long rejected = 0;
  const char* bad_betas[] = {"1/3", "2/5", "1/2", "9/10", "1", "3"};
  for (const char* b : bad_betas) {
    rejected += validate_config(GameConfig::parse(std::string("absolute:") + b, 3)).has_value();
  }

  const char* names[] = {"center", "left", "right", "steer:1/5", "steer:4/7"};
  std::uniform_int_distribution<int> pick(0, 4);
  long legal = 0, played = 0;
  while (played < 1000) {
    GameConfig cfg;
    if (played % 2 == 0) {
      cfg.kind = GameConfig::Kind::Schmidt;
      cfg.alpha = oracle::random_rational(rng, 0, 1, 20);
      cfg.beta = oracle::random_rational(rng, 0, 1, 20);
    } else {
      cfg.kind = GameConfig::Kind::Absolute;
      cfg.beta = oracle::random_rational(rng, 0, 1, 20) / 3;
    }
    cfg.rounds = rd(rng);
    if (validate_config(cfg)) continue;
    Transcript t = play(cfg, strategy_by_name(Move::Role::A, names[pick(rng)]),
                        strategy_by_name(Move::Role::B, names[pick(rng)]));
    ++played;
    legal += !t.forfeit && !revalidate(cfg, t);
  }
  const bool ok = shrink_ok == 20 && rejected == 6 && legal == 1000;
  std::ostringstream os;
  os << "shrink " << shrink_ok << "/20; beta>=1/3 rejected " << rejected << "/6; transcripts "
     << legal << "/1000 re-validate";
  report(7, ok, os.str());
}

void rational_gap() {
  std::mt19937_64 rng(8);
  long bounded = 0, attained = 0, equal_when_attained = 0;
  for (int i = 0; i < 100; ++i) {
    QVec2 th{oracle::random_rational(rng, 0, 1, 40), oracle::random_rational(rng, 0, 1, 40)};
    QVec2 eta{oracle::random_rational(rng, 0, 1, 97), oracle::random_rational(rng, 0, 1, 97)};
    const Rational gap = rational_theta_gap(th, eta);
    Int q;
    mpz_lcm(q.get_mpz_t(), th.x1.get_den_mpz_t(), th.x2.get_den_mpz_t());
    // nearest point of the grid (1/q)Z^2, coordinatewise
    auto nearest = [&](const Rational& e) { return floor(Rational(q) * e + Rational(1, 2)); };
    const Int g1 = nearest(eta.x1), g2 = nearest(eta.x2);
    Rational best = 1;
    bool hits_nearest = false;
    for (long x = 1; x <= 1000; ++x) {
      Rational e = std::max(dist_to_int(Rational(x) * th.x1 - eta.x1),
                            dist_to_int(Rational(x) * th.x2 - eta.x2));
      if (e < best) best = e;
      // residue x*theta equals the nearest grid point modulo 1
      Rational r1 = Rational(x) * th.x1 * q - g1, r2 = Rational(x) * th.x2 * q - g2;
      r1.canonicalize();
      r2.canonicalize();
      if (r1.get_den() == 1 && r2.get_den() == 1 && r1.get_num() % q == 0 &&
          r2.get_num() % q == 0) {
        hits_nearest = true;
      }
    }
    bounded += gap <= best;
    if (hits_nearest) {
      ++attained;
      equal_when_attained += gap == best;
    }
  }
  const bool ok = bounded == 100 && equal_when_attained == attained;
  std::ostringstream os;
  os << "gap <= brute min: " << bounded << "/100; equality where the grid point is hit: "
     << equal_when_attained << "/" << attained;
  report(8, ok, os.str());
}

}  // namespace

int main() {
  guarded(1, construction_soundness);
  bool have_samples = true;
  try {
    collect_samples();
  } catch (const std::exception& e) {
    have_samples = false;
    report(2, false, std::string("exception: ") + e.what());
    report(3, false, "no witness data");
  }
  if (have_samples) {
    guarded(2, witnesses);
    guarded(3, statistic_decay);
  }
  guarded(4, oracle_equivalence);
  guarded(5, dependent_case);
  guarded(6, independence);
  guarded(7, game_rules);
  guarded(8, rational_gap);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
