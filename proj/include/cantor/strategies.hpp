#pragma once

// Concrete strategy oracles and the counter-play harness.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/cantor_tree.hpp"
#include "cantor/countable.hpp"
#include "cantor/game.hpp"

namespace cantor {

/// a_n = (a_{n-1} + b_{n-1}) / 2
StrategyOracle midpoint_A();
/// b_n = (a_n + b_{n-1}) / 2
StrategyOracle midpoint_B();
/// b_n = a_n + (b_{n-1} - a_n) / 4^n
StrategyOracle squeeze_B();
/// A pseudo-random legal move that is a pure function of (seed, history):
/// a 64-bit LCG seeded with seed ^ FNV-1a(history) drives a mediant walk
/// inside the legal open interval.
StrategyOracle seeded_random(Side side, std::uint64_t seed);

/// Plays b_n = s_n = enum(n) whenever a_n < s_n < b_{n-1}, else the
/// midpoint. After N rounds no s_j with j <= N lies in (a_N, b_N).
StrategyOracle countable_killer_B(CountableEnum e);

/// A plays only left endpoints of a left-anchored target tree: a_1 = c_"0",
/// then after each reply b_n it descends p -> p 0^j 1 with j the least
/// index making e_{|p|+j} < b_n - a_n. Every move is an exact element of the
/// target. Throws NotAnchored for trees that are not left-anchored.
StrategyOracle tree_chaser_A(TreeRef target);

/// Replays the chaser rule on a history and returns the code prefix behind
/// each A move; empty when the history leaves the rule.
std::vector<Path> chaser_prefixes(const CantorTree& target, const History& h);

/// B tries to stay below s: b_n = (a_n + s) / 2 when that is legal,
/// otherwise the midpoint.
StrategyOracle dodger_B(Rat s);

/// The sub-game strategy g^(sub) = g(committed ++ sub). Sub-histories are
/// games on [a_N, b_N] of the committed history's last round.
StrategyOracle rebase_strategy_B(StrategyOracle g, History committed);

/// Oracle from a descriptor such as "midpoint_A", "squeeze_B",
/// "random_A:42", "countable_killer_B", "countable_killer_B:0/1:1/2",
/// "tree_chaser_A", "tree_chaser_A:1/8:7/8", "dodger_B:1/3". A bare kind
/// ("midpoint", "random:7") takes the given side. Throws UnknownDescriptor.
StrategyOracle oracle_from_descriptor(std::string_view descriptor, Side side,
                                      const GameConfig& config);

/// Middle-thirds tree on [a0 + w/8, b0 - w/8], the chaser's default target.
TreeRef default_chaser_target(const GameConfig& config);

struct RestartEvent {
  std::size_t round;
  Interval interval;  // [a_N, b_N], the rebased game
  Rat new_target;
};

struct CounterplayTrace {
  History committed;
  std::vector<RestartEvent> restarts;
  Rat initial_target;
  std::optional<LimitBracket> bracket;
  bool consistent = false;
};

/// Picks a fresh target strictly inside (lo, hi).
using Sampler = std::function<Rat(const Rat& lo, const Rat& hi)>;

inline Rat midpoint_sampler(const Rat& lo, const Rat& hi) { return midpoint(lo, hi); }

/// A halves the distance to the current target each round. When g replies
/// below the target the round is committed, g is rebased onto the committed
/// play and a new target is sampled inside (a_n, b_n). The committed play is
/// finally checked against the original g.
CounterplayTrace counterplay(const StrategyOracle& g, const GameConfig& config, const Rat& s,
                             const Sampler& sampler, std::size_t depth);

}  // namespace cantor
