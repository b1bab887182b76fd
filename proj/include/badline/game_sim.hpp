#pragma once

// Finite-round Schmidt (alpha, beta) games and absolute games on an interval
// of the real line, with exact rational bookkeeping.
//
// Schmidt:   B_1 = arena, A_i in B_i with |A_i| = alpha|B_i|,
//            B_{i+1} in A_i with |B_{i+1}| = beta|A_i|; the outcome is A_n.
// Absolute:  A_i is a deleted interval with 0 < |A_i| <= beta|B_i|,
//            B_{i+1} in B_i \ A_i with |B_{i+1}| >= beta|B_i|; the outcome
//            is the last B.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "badline/number.hpp"
#include "badline/trace_io.hpp"

namespace badline {

struct Interval {
  Rational lo, hi;

  Rational length() const { return hi - lo; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool contains(const Rational& p) const { return lo <= p && p <= hi; }
  bool operator==(const Interval&) const = default;
};

struct GameConfig {
  enum class Kind { Schmidt, Absolute };
  Kind kind = Kind::Schmidt;
  Rational alpha{1, 2};  // Schmidt only
  Rational beta{1, 2};
  Interval arena{Rational(0), Rational(1)};
  long rounds = 1;

  /// "schmidt:1/2,1/2" or "absolute:1/4". Throws ParseError, InvalidArgument.
  static GameConfig parse(const std::string& kind, long rounds,
                          Interval arena = {Rational(0), Rational(1)});
};

/// Empty when valid, else the violated constraint.
std::optional<std::string> validate_config(const GameConfig& cfg);

struct Move {
  enum class Role { A, B };
  Role role;
  Interval iv;  // A-ball, or the deleted interval in the absolute game
};

struct Transcript {
  std::vector<Move> moves;  // B_1 first
  std::optional<std::string> forfeit;  // "A: <reason>" or "B: <reason>"
  std::optional<Interval> final_interval;
};

struct Violation {
  std::string constraint;
};

/// Checks the pending move against the rules and the history.
std::optional<Violation> validate_move(const GameConfig& cfg, const Transcript& history,
                                       const Move& mv);

/// A strategy maps the history to the next move interval.
using Strategy = std::function<Interval(const GameConfig&, const Transcript&)>;

/// "center", "left", "right", "steer:p" (keep p when possible).
/// Throws InvalidArgument for unknown names.
Strategy strategy_by_name(Move::Role role, const std::string& name);

/// Plays cfg.rounds rounds. An illegal move, or a throwing strategy, ends
/// the game with a forfeit by that player.
Transcript play(const GameConfig& cfg, const Strategy& a, const Strategy& b);

/// Replays the transcript from scratch; empty when every move is legal.
std::optional<Violation> revalidate(const GameConfig& cfg, const Transcript& t);

/// Schmidt: |B_1|(alpha beta)^(n-1). Absolute: the floor |B_1| beta^(n-1).
Rational shrink_after(const GameConfig& cfg, long n);

Json transcript_to_json(const GameConfig& cfg, const Transcript& t);

}  // namespace badline
