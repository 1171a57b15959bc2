#pragma once

// The Cantor game on [a0, b0]: A picks a_n with a_{n-1} < a_n < b_{n-1}, then
// B picks b_n with a_n < b_n < b_{n-1}. Infinite plays are represented by
// finite prefixes; the limit a = lim a_n is known only through the bracket
// a_n < a < b_n.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/rational.hpp"

namespace cantor {

enum class Side { A, B };

std::string_view side_name(Side s);
Side parse_side(std::string_view s);

struct GameConfig {
  Rat a0;
  Rat b0;

  /// Throws InvalidConfig unless a0 < b0.
  static GameConfig make(Rat a0, Rat b0);
  static GameConfig unit() { return make(Rat(0), Rat(1)); }

  bool operator==(const GameConfig&) const = default;
};

struct Round {
  Rat a;
  Rat b;
  bool operator==(const Round&) const = default;
};

/// A finite play prefix. Values are immutable: apply_move returns a new
/// History and re-validates the full chain
///   a0 < a1 < ... < an (< pending) < bn < ... < b0.
class History {
 public:
  explicit History(GameConfig config) : config_(std::move(config)) {}

  /// Builds and validates a history from raw parts.
  static History from_parts(GameConfig config, std::vector<Round> rounds,
                            std::optional<Rat> pending_a);

  const GameConfig& config() const { return config_; }
  const std::vector<Round>& rounds() const { return rounds_; }
  const std::optional<Rat>& pending_a() const { return pending_; }
  std::size_t depth() const { return rounds_.size(); }

  Side to_move() const { return pending_ ? Side::B : Side::A; }

  /// Last committed a (a0 when no rounds) and b (b0 when no rounds).
  const Rat& last_a() const { return rounds_.empty() ? config_.a0 : rounds_.back().a; }
  const Rat& last_b() const { return rounds_.empty() ? config_.b0 : rounds_.back().b; }

  /// Open interval the next move must lie in.
  Bound legal_bounds() const;

  /// The first n full rounds, no pending move.
  History prefix(std::size_t n) const;
  /// The first n full rounds followed by A's move of round n+1.
  History prefix_with_pending(std::size_t n) const;

  /// Flat argument list a0, b0, a1, b1, ..., [pending]: the tuple the
  /// strategy functions take.
  std::vector<Rat> flat_args() const;

  bool operator==(const History&) const = default;

 private:
  friend History apply_move(const History& h, Side side, const Rat& v);

  GameConfig config_;
  std::vector<Round> rounds_;
  std::optional<Rat> pending_;
};

/// Appends one move. Throws WrongTurn, or IllegalMove carrying the violated
/// open bound.
History apply_move(const History& h, Side side, const Rat& v);

/// Deterministic move procedure for one side. The procedure receives the
/// whole history; for A the history has no pending move, for B it ends with
/// A's move of the current round.
class StrategyOracle {
 public:
  using MoveFn = std::function<Rat(const History&)>;

  StrategyOracle(Side side, std::string descriptor, MoveFn fn)
      : side_(side), descriptor_(std::move(descriptor)), fn_(std::move(fn)) {}

  Side side() const { return side_; }
  const std::string& descriptor() const { return descriptor_; }

  Rat operator()(const History& h) const { return fn_(h); }

 private:
  Side side_;
  std::string descriptor_;
  MoveFn fn_;
};

/// Plays n full rounds between two oracles.
History run(const GameConfig& config, const StrategyOracle& sa, const StrategyOracle& sb,
            std::size_t rounds);

struct Consistent {
  bool operator==(const Consistent&) const = default;
};
struct FirstDivergence {
  std::size_t round;  // 1-based
  Rat expected;
  Rat found;
  bool operator==(const FirstDivergence&) const = default;
};
using ConsistencyVerdict = std::variant<Consistent, FirstDivergence>;

inline bool is_consistent(const ConsistencyVerdict& v) {
  return std::holds_alternative<Consistent>(v);
}

/// Re-invokes the oracle on every prefix of h for the given side and
/// compares exactly. A pending A move is checked too.
ConsistencyVerdict check_consistency(const History& h, const StrategyOracle& s, Side side);

struct LimitBracket {
  Rat lo;
  Rat hi;
  std::size_t depth;
};

/// (a_n, b_n, n) for the deepest full round. Throws NoRounds.
LimitBracket limit_bracket(const History& h);

}  // namespace cantor
