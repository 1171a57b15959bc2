#include "cantor/game.hpp"

namespace cantor {

std::string_view side_name(Side s) { return s == Side::A ? "A" : "B"; }

Side parse_side(std::string_view s) {
  if (s == "A" || s == "a") return Side::A;
  if (s == "B" || s == "b") return Side::B;
  throw CantorError(Errc::ParseError, "side must be A or B, got \"" + std::string(s) + "\"");
}

GameConfig GameConfig::make(Rat a0, Rat b0) {
  if (!(a0 < b0))
    throw CantorError(Errc::InvalidConfig,
                      "game interval needs a0 < b0 (got " + a0.str() + ", " + b0.str() + ")");
  return GameConfig{std::move(a0), std::move(b0)};
}

Bound History::legal_bounds() const {
  if (pending_) return {*pending_, last_b()};
  return {last_a(), last_b()};
}

History History::prefix(std::size_t n) const {
  History h(config_);
  h.rounds_.assign(rounds_.begin(), rounds_.begin() + static_cast<std::ptrdiff_t>(n));
  return h;
}

History History::prefix_with_pending(std::size_t n) const {
  History h = prefix(n);
  h.pending_ = n < rounds_.size() ? rounds_[n].a : *pending_;
  return h;
}

std::vector<Rat> History::flat_args() const {
  std::vector<Rat> out{config_.a0, config_.b0};
  for (const auto& r : rounds_) {
    out.push_back(r.a);
    out.push_back(r.b);
  }
  if (pending_) out.push_back(*pending_);
  return out;
}

History History::from_parts(GameConfig config, std::vector<Round> rounds,
                            std::optional<Rat> pending_a) {
  History h(std::move(config));
  for (const auto& r : rounds) {
    h = apply_move(h, Side::A, r.a);
    h = apply_move(h, Side::B, r.b);
  }
  if (pending_a) h = apply_move(h, Side::A, *pending_a);
  return h;
}

History apply_move(const History& h, Side side, const Rat& v) {
  if (side != h.to_move())
    throw CantorError(Errc::WrongTurn, std::string("it is player ") +
                                           std::string(side_name(h.to_move())) + "'s turn");
  const Bound bound = h.legal_bounds();
  if (!(bound.lo < v && v < bound.hi)) {
    throw CantorError(Errc::IllegalMove,
                      std::string("move ") + v.str() + " by " + std::string(side_name(side)) +
                          " must satisfy " + bound.lo.str() + " < value < " + bound.hi.str(),
                      bound);
  }
  History next = h;
  if (side == Side::A) {
    next.pending_ = v;
  } else {
    next.rounds_.push_back(Round{*h.pending_, v});
    next.pending_.reset();
  }
  return next;
}

History run(const GameConfig& config, const StrategyOracle& sa, const StrategyOracle& sb,
            std::size_t rounds) {
  History h(config);
  for (std::size_t n = 0; n < rounds; ++n) {
    h = apply_move(h, Side::A, sa(h));
    h = apply_move(h, Side::B, sb(h));
  }
  return h;
}

ConsistencyVerdict check_consistency(const History& h, const StrategyOracle& s, Side side) {
  const auto& rounds = h.rounds();
  if (side == Side::A) {
    const std::size_t moves = rounds.size() + (h.pending_a() ? 1 : 0);
    for (std::size_t n = 0; n < moves; ++n) {
      const Rat found = n < rounds.size() ? rounds[n].a : *h.pending_a();
      Rat expected = s(h.prefix(n));
      if (expected != found) return FirstDivergence{n + 1, std::move(expected), found};
    }
  } else {
    for (std::size_t n = 0; n < rounds.size(); ++n) {
      Rat expected = s(h.prefix_with_pending(n));
      if (expected != rounds[n].b) return FirstDivergence{n + 1, std::move(expected), rounds[n].b};
    }
  }
  return Consistent{};
}

LimitBracket limit_bracket(const History& h) {
  if (h.rounds().empty()) throw CantorError(Errc::NoRounds, "history has no complete round");
  const auto& last = h.rounds().back();
  return {last.a, last.b, h.rounds().size()};
}

}  // namespace cantor
