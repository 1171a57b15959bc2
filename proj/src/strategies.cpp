#include "cantor/strategies.hpp"

#include <array>

namespace cantor {

namespace {

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct Lcg {
  std::uint64_t state;
  std::uint64_t next() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state;
  }
};

Rat pow4_inverse(std::size_t n) { return inv_pow2(static_cast<unsigned>(2 * n)); }

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

StrategyOracle midpoint_A() {
  return {Side::A, "midpoint_A", [](const History& h) { return midpoint(h.last_a(), h.last_b()); }};
}

StrategyOracle midpoint_B() {
  return {Side::B, "midpoint_B",
          [](const History& h) { return midpoint(*h.pending_a(), h.last_b()); }};
}

StrategyOracle squeeze_B() {
  return {Side::B, "squeeze_B", [](const History& h) {
            const Rat& a = *h.pending_a();
            const std::size_t n = h.depth() + 1;
            return a + (h.last_b() - a) * pow4_inverse(n);
          }};
}

StrategyOracle seeded_random(Side side, std::uint64_t seed) {
  std::string desc = std::string("random_") + std::string(side_name(side)) + ":" + std::to_string(seed);
  return {side, desc, [seed](const History& h) {
            std::uint64_t hash = 0xcbf29ce484222325ULL;
            for (const auto& v : h.flat_args()) {
              hash = fnv1a(v.str(), hash);
              hash = fnv1a(",", hash);
            }
            Lcg rng{seed ^ hash};
            const std::uint64_t steps = 1 + (rng.next() >> 61);
            const std::uint64_t dirs = rng.next();
            const Bound b = h.legal_bounds();
            Rat lo = b.lo;
            Rat hi = b.hi;
            for (std::uint64_t i = 0; i < steps; ++i) {
              Rat m = mediant(lo, hi);
              if ((dirs >> (63 - i)) & 1U) {
                lo = std::move(m);
              } else {
                hi = std::move(m);
              }
            }
            return mediant(lo, hi);
          }};
}

StrategyOracle countable_killer_B(CountableEnum e) {
  std::string desc = "countable_killer_B:" + e.descriptor();
  return {Side::B, desc, [e = std::move(e)](const History& h) {
            const Rat& a = *h.pending_a();
            const Rat& prev_b = h.last_b();
            const auto s = e.at(h.depth() + 1);
            if (s && a < *s && *s < prev_b) return *s;
            return midpoint(a, prev_b);
          }};
}

std::vector<Path> chaser_prefixes(const CantorTree& target, const History& h) {
  std::vector<Path> out;
  Path p = "0";
  Rat a = target.expand(p).lo;
  out.push_back(p);
  for (const auto& round : h.rounds()) {
    if (round.a != a) return {};
    const Rat gap = round.b - a;
    Rat e = target.e(p.size());
    std::size_t j = 0;
    while (!(e < gap)) {
      e *= target.rule().ratio;
      ++j;
    }
    p.append(j, '0');
    p.push_back('1');
    a = target.expand(p).lo;
    out.push_back(p);
  }
  return out;
}

StrategyOracle tree_chaser_A(TreeRef target) {
  if (!target->left_anchored())
    throw CantorError(Errc::NotAnchored, "tree_chaser_A needs a left-anchored target");
  std::string desc = "tree_chaser_A:" + target->root().lo.str() + ":" + target->root().hi.str();
  return {Side::A, desc, [t = std::move(target)](const History& h) {
            const auto& cfg = h.config();
            const Interval first = t->expand("0");
            const Interval second = t->expand("1");
            if (!(first.inside_open(cfg.a0, cfg.b0) && second.inside_open(cfg.a0, cfg.b0)))
              throw CantorError(Errc::PrologueViolation,
                                "target level-1 intervals must lie strictly inside (a0, b0)");
            const auto prefixes = chaser_prefixes(*t, h);
            const Bound legal = h.legal_bounds();
            if (!prefixes.empty()) {
              Rat a = t->expand(prefixes.back()).lo;
              if (legal.lo < a && a < legal.hi) return a;
            }
            // Off-script history: stay legal, uncertified.
            return midpoint(legal.lo, legal.hi);
          }};
}

StrategyOracle dodger_B(Rat s) {
  std::string desc = "dodger_B:" + s.str();
  return {Side::B, desc, [s = std::move(s)](const History& h) {
            const Rat& a = *h.pending_a();
            const Rat& prev_b = h.last_b();
            Rat candidate = midpoint(a, s);
            if (a < candidate && candidate < prev_b) return candidate;
            return midpoint(a, prev_b);
          }};
}

StrategyOracle rebase_strategy_B(StrategyOracle g, History committed) {
  if (committed.pending_a())
    throw CantorError(Errc::WrongTurn, "rebase needs a history that ends after B's reply");
  std::string desc = "rebase(" + g.descriptor() + "," + std::to_string(committed.depth()) + ")";
  return {Side::B, desc, [g = std::move(g), committed = std::move(committed)](const History& sub) {
            std::vector<Round> rounds = committed.rounds();
            rounds.insert(rounds.end(), sub.rounds().begin(), sub.rounds().end());
            return g(History::from_parts(committed.config(), std::move(rounds), sub.pending_a()));
          }};
}

TreeRef default_chaser_target(const GameConfig& config) {
  const Rat w = config.b0 - config.a0;
  return CantorTree::middle_thirds(config.a0 + w / Rat(8), config.b0 - w / Rat(8));
}

StrategyOracle oracle_from_descriptor(std::string_view descriptor, Side side,
                                      const GameConfig& config) {
  const auto parts = split(descriptor, ':');
  std::string kind = parts[0];
  if (kind.size() > 2 && kind[kind.size() - 2] == '_' &&
      (kind.back() == 'A' || kind.back() == 'B')) {
    side = kind.back() == 'A' ? Side::A : Side::B;
    kind.resize(kind.size() - 2);
  }
  const auto unknown = [&](const std::string& why) {
    return CantorError(Errc::UnknownDescriptor,
                       "unknown strategy \"" + std::string(descriptor) + "\": " + why);
  };
  const auto want = [&](Side s) {
    if (side != s) throw unknown("only available for player " + std::string(side_name(s)));
  };
  if (kind == "midpoint") {
    if (parts.size() != 1) throw unknown("takes no parameters");
    return side == Side::A ? midpoint_A() : midpoint_B();
  }
  if (kind == "squeeze") {
    want(Side::B);
    return squeeze_B();
  }
  if (kind == "random") {
    if (parts.size() != 2) throw unknown("expected random:<seed>");
    try {
      return seeded_random(side, std::stoull(parts[1]));
    } catch (const std::logic_error&) {
      throw unknown("seed must be an unsigned integer");
    }
  }
  if (kind == "countable_killer") {
    want(Side::B);
    if (parts.size() == 1) return countable_killer_B(CountableEnum(RatEnumeration(config.a0, config.b0)));
    if (parts.size() == 3)
      return countable_killer_B(CountableEnum(RatEnumeration(Rat::parse(parts[1]), Rat::parse(parts[2]))));
    throw unknown("expected countable_killer or countable_killer:<lo>:<hi>");
  }
  if (kind == "tree_chaser") {
    want(Side::A);
    if (parts.size() == 1) return tree_chaser_A(default_chaser_target(config));
    if (parts.size() == 3)
      return tree_chaser_A(CantorTree::middle_thirds(Rat::parse(parts[1]), Rat::parse(parts[2])));
    throw unknown("expected tree_chaser or tree_chaser:<lo>:<hi>");
  }
  if (kind == "dodger") {
    want(Side::B);
    if (parts.size() != 2) throw unknown("expected dodger:<s>");
    return dodger_B(Rat::parse(parts[1]));
  }
  throw unknown("no such kind");
}

CounterplayTrace counterplay(const StrategyOracle& g, const GameConfig& config, const Rat& s,
                             const Sampler& sampler, std::size_t depth) {
  if (!(config.a0 < s && s < config.b0))
    throw CantorError(Errc::InvalidConfig, "target point must lie in (a0, b0)", Bound{config.a0, config.b0});
  CounterplayTrace trace{History(config), {}, s, std::nullopt, false};
  StrategyOracle current = g;
  History sub(config);
  Rat target = s;
  for (std::size_t n = 1; n <= depth; ++n) {
    const Rat a = midpoint(sub.last_a(), target);
    sub = apply_move(sub, Side::A, a);
    const Rat b = current(sub);
    sub = apply_move(sub, Side::B, b);
    trace.committed = apply_move(apply_move(trace.committed, Side::A, a), Side::B, b);
    if (b < target) {
      Rat fresh = sampler(a, b);
      if (!(a < fresh && fresh < b))
        throw CantorError(Errc::SamplerOutOfRange, "sampler returned " + fresh.str() + " outside (" +
                                                       a.str() + ", " + b.str() + ")",
                          Bound{a, b});
      trace.restarts.push_back({n, Interval{a, b}, fresh});
      current = rebase_strategy_B(g, trace.committed);
      sub = History(GameConfig{a, b});
      target = std::move(fresh);
    }
  }
  if (depth > 0) trace.bracket = limit_bracket(trace.committed);
  trace.consistent = is_consistent(check_consistency(trace.committed, g, Side::B));
  return trace;
}

}  // namespace cantor
