#include "badline/game_sim.hpp"

#include <algorithm>

#include "badline/error.hpp"

namespace badline {

namespace {

using Kind = GameConfig::Kind;
using Role = Move::Role;

Role expected_role(const Transcript& t) { return t.moves.size() % 2 == 0 ? Role::B : Role::A; }

const Interval& last_of(const Transcript& t, Role role) {
  for (auto it = t.moves.rbegin(); it != t.moves.rend(); ++it) {
    if (it->role == role) return it->iv;
  }
  throw Error(ErrorKind::InvalidArgument, "no previous move of that role");
}

bool disjoint(const Interval& a, const Interval& b) { return a.hi < b.lo || b.hi < a.lo; }

// Interval of the given length inside [lo, hi] as close to centre c as allowed.
Interval place(const Rational& lo, const Rational& hi, const Rational& len, const Rational& c) {
  Rational s = c - len / 2;
  if (s < lo) s = lo;
  if (s + len > hi) s = hi - len;
  return {s, s + len};
}

// Gaps of B \ A usable for a closed interval of length len kept strictly off A.
struct Gap {
  Rational lo, hi;
};

std::vector<Gap> gaps_for(const Interval& B, const Interval& A, const Rational& len) {
  std::vector<Gap> out;
  auto add = [&](const Rational& lo, const Rational& hi_open) {
    Rational room = hi_open - lo - len;
    if (room > 0) out.push_back({lo, hi_open - room / 2});
  };
  add(B.lo, std::min(A.lo, B.hi));
  // mirror the right gap so the open end is on A's side
  Rational r_lo = std::max(A.hi, B.lo);
  Rational room = B.hi - r_lo - len;
  if (room > 0) out.push_back({r_lo + room / 2, B.hi});
  return out;
}

Interval absolute_b(const GameConfig& cfg, const Transcript& t, const std::string& mode,
                    const Rational& p) {
  const Interval& B = last_of(t, Role::B);
  const Interval& A = last_of(t, Role::A);
  const Rational len = cfg.beta * B.length();
  auto gaps = gaps_for(B, A, len);
  if (gaps.empty()) throw Error(ErrorKind::Infeasible, "no room outside the deleted interval");
  const Gap* pick = &gaps.front();
  if (mode == "left") {
    pick = &gaps.front();
  } else if (mode == "right") {
    pick = &gaps.back();
  } else if (mode == "steer") {
    for (const auto& g : gaps) {
      if (g.lo <= p && p <= g.hi) pick = &g;
    }
    if (!(pick->lo <= p && p <= pick->hi)) {
      pick = &*std::max_element(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
        return a.hi - a.lo < b.hi - b.lo;
      });
    }
  } else {
    pick = &*std::max_element(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) {
      return a.hi - a.lo < b.hi - b.lo;
    });
  }
  Rational c = (pick->lo + pick->hi) / 2;
  if (mode == "left") c = pick->lo;
  if (mode == "right") c = pick->hi;
  if (mode == "steer") c = p;
  return place(pick->lo, pick->hi, len, c);
}

}  // namespace

GameConfig GameConfig::parse(const std::string& kind, long rounds, Interval arena) {
  GameConfig cfg;
  cfg.rounds = rounds;
  cfg.arena = arena;
  auto colon = kind.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::ParseError, "game kind needs ':'");
  const std::string name = kind.substr(0, colon), args = kind.substr(colon + 1);
  if (name == "schmidt") {
    auto comma = args.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::ParseError, "schmidt needs alpha,beta");
    cfg.kind = Kind::Schmidt;
    cfg.alpha = parse_rational(args.substr(0, comma));
    cfg.beta = parse_rational(args.substr(comma + 1));
  } else if (name == "absolute") {
    cfg.kind = Kind::Absolute;
    cfg.alpha = 0;
    cfg.beta = parse_rational(args);
  } else {
    throw Error(ErrorKind::ParseError, "unknown game kind '" + name + "'");
  }
  return cfg;
}

std::optional<std::string> validate_config(const GameConfig& cfg) {
  if (cfg.rounds < 1) return "rounds >= 1";
  if (!(cfg.arena.lo < cfg.arena.hi)) return "arena has positive length";
  if (cfg.kind == Kind::Schmidt) {
    if (!(0 < cfg.alpha && cfg.alpha < 1)) return "alpha in (0,1)";
    if (!(0 < cfg.beta && cfg.beta < 1)) return "beta in (0,1)";
  } else if (!(0 < cfg.beta && cfg.beta < Rational(1, 3))) {
    return "beta in (0,1/3)";
  }
  return std::nullopt;
}

std::optional<Violation> validate_move(const GameConfig& cfg, const Transcript& history,
                                       const Move& mv) {
  if (history.forfeit) return Violation{"game already ended"};
  if (mv.role != expected_role(history)) return Violation{"turn order"};
  if (!(mv.iv.lo < mv.iv.hi)) return Violation{"positive length"};
  if (history.moves.empty()) {
    if (mv.iv != cfg.arena) return Violation{"B_1 is the arena"};
    return std::nullopt;
  }
  const Rational len = mv.iv.length();
  const Interval& B = last_of(history, Role::B);
  if (cfg.kind == Kind::Schmidt) {
    if (mv.role == Role::A) {
      if (!B.contains(mv.iv)) return Violation{"containment A_i in B_i"};
      if (len != cfg.alpha * B.length()) return Violation{"|A_i| = alpha|B_i|"};
    } else {
      const Interval& A = last_of(history, Role::A);
      if (!A.contains(mv.iv)) return Violation{"containment B_i+1 in A_i"};
      if (len != cfg.beta * A.length()) return Violation{"|B_i+1| = beta|A_i|"};
    }
    return std::nullopt;
  }
  if (mv.role == Role::A) {
    if (!B.contains(mv.iv)) return Violation{"containment A_i in B_i"};
    if (len > cfg.beta * B.length()) return Violation{"|A_i| <= beta|B_i|"};
  } else {
    const Interval& A = last_of(history, Role::A);
    if (!B.contains(mv.iv)) return Violation{"containment B_i+1 in B_i"};
    if (!disjoint(mv.iv, A)) return Violation{"B_i+1 avoids A_i"};
    if (len < cfg.beta * B.length()) return Violation{"|B_i+1| >= beta|B_i|"};
  }
  return std::nullopt;
}

Strategy strategy_by_name(Role role, const std::string& name) {
  std::string mode = name;
  Rational p;
  if (name.rfind("steer:", 0) == 0) {
    mode = "steer";
    p = parse_rational(name.substr(6));
  } else if (name != "center" && name != "left" && name != "right") {
    throw Error(ErrorKind::InvalidArgument, "unknown strategy '" + name + "'");
  }
  return [role, mode, p](const GameConfig& cfg, const Transcript& t) -> Interval {
    const Interval& B = last_of(t, Role::B);
    if (cfg.kind == Kind::Absolute && role == Role::B) return absolute_b(cfg, t, mode, p);
    Interval outer = B;
    Rational len;
    if (cfg.kind == Kind::Schmidt) {
      if (role == Role::A) {
        len = cfg.alpha * B.length();
      } else {
        outer = last_of(t, Role::A);
        len = cfg.beta * outer.length();
      }
    } else {
      len = cfg.beta * B.length();
    }
    Rational c = (outer.lo + outer.hi) / 2;
    if (mode == "left") c = outer.lo;
    if (mode == "right") c = outer.hi;
    if (mode == "steer") {
      c = p;
      // a deleting player keeps p alive by cutting at the far end of B
      if (cfg.kind == Kind::Absolute) c = (p - outer.lo < outer.hi - p) ? outer.hi : outer.lo;
    }
    return place(outer.lo, outer.hi, len, c);
  };
}

Transcript play(const GameConfig& cfg, const Strategy& a, const Strategy& b) {
  if (auto bad = validate_config(cfg)) throw Error(ErrorKind::InvalidArgument, *bad);
  Transcript t;
  t.moves.push_back({Role::B, cfg.arena});
  auto turn = [&](Role role, const Strategy& s) {
    const char* who = role == Role::A ? "A: " : "B: ";
    Move mv{role, {}};
    try {
      mv.iv = s(cfg, t);
    } catch (const std::exception& e) {
      t.forfeit = std::string(who) + "strategy error: " + e.what();
      return false;
    }
    if (auto v = validate_move(cfg, t, mv)) {
      t.forfeit = std::string(who) + v->constraint;
      return false;
    }
    t.moves.push_back(mv);
    return true;
  };
  for (long i = 1; i <= cfg.rounds; ++i) {
    if (i > 1 && !turn(Role::B, b)) return t;
    if (!turn(Role::A, a)) return t;
  }
  t.final_interval = cfg.kind == Kind::Schmidt ? t.moves.back().iv : last_of(t, Role::B);
  return t;
}

std::optional<Violation> revalidate(const GameConfig& cfg, const Transcript& t) {
  if (auto bad = validate_config(cfg)) return Violation{*bad};
  Transcript replay;
  for (const auto& mv : t.moves) {
    if (auto v = validate_move(cfg, replay, mv)) return v;
    replay.moves.push_back(mv);
  }
  if (!t.forfeit) {
    if (static_cast<long>(t.moves.size()) != 2 * cfg.rounds) return Violation{"move count"};
    Interval expect = cfg.kind == Kind::Schmidt ? t.moves.back().iv : last_of(t, Role::B);
    if (t.final_interval != expect) return Violation{"final interval"};
  }
  return std::nullopt;
}

Rational shrink_after(const GameConfig& cfg, long n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n >= 1");
  const Rational ratio = cfg.kind == Kind::Schmidt ? Rational(cfg.alpha * cfg.beta) : cfg.beta;
  Rational out = cfg.arena.length();
  for (long i = 1; i < n; ++i) out *= ratio;
  return out;
}

Json transcript_to_json(const GameConfig& cfg, const Transcript& t) {
  using namespace json_io;
  auto iv = [](const Interval& i) { return Json::array({of(i.lo), of(i.hi)}); };
  Json j;
  j["kind"] = cfg.kind == Kind::Schmidt ? "schmidt" : "absolute";
  if (cfg.kind == Kind::Schmidt) j["alpha"] = of(cfg.alpha);
  j["beta"] = of(cfg.beta);
  j["arena"] = iv(cfg.arena);
  j["rounds"] = cfg.rounds;
  Json moves = Json::array();
  for (const auto& m : t.moves) {
    Json mj;
    mj["role"] = m.role == Role::A ? "A" : "B";
    mj["interval"] = iv(m.iv);
    moves.push_back(std::move(mj));
  }
  j["moves"] = std::move(moves);
  j["forfeit"] = t.forfeit ? Json(*t.forfeit) : Json(nullptr);
  j["final"] = t.final_interval ? iv(*t.final_interval) : Json(nullptr);
  return j;
}

}  // namespace badline
