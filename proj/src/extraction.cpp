#include "cantor/extraction.hpp"

#include <deque>
#include <tuple>

#include "cantor/kernels.hpp"

namespace cantor {

namespace {

// Invokes the oracle and appends its move, turning an illegal answer into a
// contract violation that names the inequality.
History oracle_step(const StrategyOracle& s, const History& h, Rat* out) {
  Rat v = s(h);
  try {
    History next = apply_move(h, s.side(), v);
    *out = std::move(v);
    return next;
  } catch (const CantorError& err) {
    if (err.code() != Errc::IllegalMove && err.code() != Errc::WrongTurn) throw;
    const std::size_t n = h.depth() + 1;
    const std::string rule =
        s.side() == Side::A ? "a_" + std::to_string(n - 1) + " < a_" + std::to_string(n) + " < b_" + std::to_string(n - 1)
                            : "a_" + std::to_string(n) + " < b_" + std::to_string(n) + " < b_" + std::to_string(n - 1);
    throw CantorError(Errc::OracleContractViolation,
                      "strategy " + s.descriptor() + " returned " + v.str() + ", breaking " + rule +
                          " on history of depth " + std::to_string(h.depth()),
                      err.bound());
  }
}

bool strictly_increasing(std::initializer_list<const Rat*> chain) {
  const Rat* prev = nullptr;
  for (const Rat* r : chain) {
    if (prev && !(*prev < *r)) return false;
    prev = r;
  }
  return true;
}

std::string chain_str(std::initializer_list<const Rat*> chain) {
  std::string out;
  for (const Rat* r : chain) {
    if (!out.empty()) out += " < ";
    out += r->str();
  }
  return out;
}

// One node's worth of construction state: the history after the node's
// round (A-side: before A answers with c_p; B-side: complete).
struct Frontier {
  Path path;
  History history;
};

}  // namespace

ExtractedTree extract_from_A(const StrategyOracle& f, const GameConfig& config, std::size_t depth,
                             const RatEnumeration& enumeration,
                             const std::optional<EnumIndex>& index_cap) {
  if (f.side() != Side::A)
    throw CantorError(Errc::OracleContractViolation, "extract_from_A needs a player-A strategy");
  if (depth < 1) throw CantorError(Errc::DepthExceeded, "extraction depth must be at least 1");
  std::map<Path, Interval> nodes;
  std::map<Path, History> ledger;
  std::map<Path, EnumIndex> indices;

  const History start(config);
  Rat a1;
  oracle_step(f, start, &a1);
  nodes.emplace("", Interval{a1, config.b0});
  ledger.emplace("", start);

  std::deque<Frontier> queue{{"", start}};
  while (!queue.empty()) {
    Frontier node = std::move(queue.front());
    queue.pop_front();
    if (node.path.size() >= depth) continue;
    const Interval& I = nodes.at(node.path);
    const Rat& c = I.lo;
    const Rat& d = I.hi;
    const Rat u = midpoint(c, d);
    // A's pending move c_p, then B candidates from the enumeration.
    const History with_c = apply_move(node.history, Side::A, c);

    FirstIn d1 = enumeration.first_in(c, u, index_cap);
    const History h1 = apply_move(with_c, Side::B, d1.value);
    Rat c1;
    oracle_step(f, h1, &c1);

    FirstIn d0 = enumeration.first_in(c, c1, index_cap);
    const History h0 = apply_move(with_c, Side::B, d0.value);
    Rat c0;
    oracle_step(f, h0, &c0);

    if (!strictly_increasing({&c, &c0, &d0.value, &c1, &d1.value, &u, &d})) {
      throw CantorError(Errc::OracleContractViolation,
                        "ordering chain fails at \"" + node.path +
                            "\": " + chain_str({&c, &c0, &d0.value, &c1, &d1.value, &u, &d}));
    }
    const Path p0 = node.path + '0';
    const Path p1 = node.path + '1';
    nodes.emplace(p0, Interval{c0, d0.value});
    nodes.emplace(p1, Interval{c1, d1.value});
    ledger.emplace(p0, h0);
    ledger.emplace(p1, h1);
    indices.emplace(p0, std::move(d0.index));
    indices.emplace(p1, std::move(d1.index));
    queue.push_back({p0, h0});
    queue.push_back({p1, h1});
  }

  TreeRef tree = CantorTree::materialized(BoundRule{config.b0 - config.a0}, std::move(nodes), depth, false);
  return {std::move(tree), Side::A, f, config, enumeration, depth, std::move(ledger), std::move(indices)};
}

ExtractedTree extract_from_B(const StrategyOracle& g, const GameConfig& config, std::size_t depth,
                             const RatEnumeration& enumeration,
                             const std::optional<EnumIndex>& index_cap) {
  if (g.side() != Side::B)
    throw CantorError(Errc::OracleContractViolation, "extract_from_B needs a player-B strategy");
  if (depth < 1) throw CantorError(Errc::DepthExceeded, "extraction depth must be at least 1");
  std::map<Path, Interval> nodes;
  std::map<Path, History> ledger;
  std::map<Path, EnumIndex> indices;
  nodes.emplace("", Interval{config.a0, config.b0});

  std::deque<Frontier> queue{{"", History(config)}};
  while (!queue.empty()) {
    Frontier node = std::move(queue.front());
    queue.pop_front();
    if (node.path.size() >= depth) continue;
    const Interval& I = nodes.at(node.path);
    const Rat& c = I.lo;
    const Rat& d = I.hi;
    const Rat u = midpoint(c, d);

    FirstIn c0 = enumeration.first_in(u, d, index_cap);
    const History q0 = apply_move(node.history, Side::A, c0.value);
    Rat d0;
    const History h0 = oracle_step(g, q0, &d0);

    FirstIn c1 = enumeration.first_in(d0, d, index_cap);
    const History q1 = apply_move(node.history, Side::A, c1.value);
    Rat d1;
    const History h1 = oracle_step(g, q1, &d1);

    if (!strictly_increasing({&c, &u, &c0.value, &d0, &c1.value, &d1, &d})) {
      throw CantorError(Errc::OracleContractViolation,
                        "ordering chain fails at \"" + node.path +
                            "\": " + chain_str({&c, &u, &c0.value, &d0, &c1.value, &d1, &d}));
    }
    const Path p0 = node.path + '0';
    const Path p1 = node.path + '1';
    nodes.emplace(p0, Interval{c0.value, d0});
    nodes.emplace(p1, Interval{c1.value, d1});
    ledger.emplace(p0, q0);
    ledger.emplace(p1, q1);
    indices.emplace(p0, std::move(c0.index));
    indices.emplace(p1, std::move(c1.index));
    queue.push_back({p0, h0});
    queue.push_back({p1, h1});
  }

  TreeRef tree = CantorTree::materialized(BoundRule{config.b0 - config.a0}, std::move(nodes), depth, false);
  return {std::move(tree), Side::B, g, config, enumeration, depth, std::move(ledger), std::move(indices)};
}

ExtractedTree extract(const StrategyOracle& oracle, const GameConfig& config, std::size_t depth) {
  const RatEnumeration q0(config.a0, config.b0);
  return oracle.side() == Side::A ? extract_from_A(oracle, config, depth, q0)
                                  : extract_from_B(oracle, config, depth, q0);
}

namespace {

std::vector<Round> coded_rounds(const ExtractedTree& x, const Path& code_prefix) {
  const CantorTree& t = *x.tree;
  std::vector<Round> rounds;
  rounds.reserve(code_prefix.size());
  for (std::size_t n = 1; n <= code_prefix.size(); ++n) {
    const Interval here = t.expand(code_prefix.substr(0, n));
    if (x.side == Side::A) {
      rounds.push_back({t.expand(code_prefix.substr(0, n - 1)).lo, here.hi});
    } else {
      rounds.push_back({here.lo, here.hi});
    }
  }
  return rounds;
}

// The oracle input that produced node q's strategy-derived endpoint.
History expected_ledger(const ExtractedTree& x, const Path& q) {
  if (x.side == Side::A) return History::from_parts(x.config, coded_rounds(x, q), std::nullopt);
  return History::from_parts(x.config, coded_rounds(x, q.substr(0, q.size() - 1)),
                             x.tree->expand(q).lo);
}

}  // namespace

ReplayResult replay(const ExtractedTree& x, const Path& code_prefix) {
  const std::size_t m = code_prefix.size();
  if (m > x.depth)
    throw CantorError(Errc::DepthExceeded, "code of length " + std::to_string(m) +
                                               " exceeds extraction depth " + std::to_string(x.depth));
  const CantorTree& t = *x.tree;
  ReplayResult r{History::from_parts(x.config, coded_rounds(x, code_prefix), std::nullopt), Consistent{},
                 t.expand(code_prefix.substr(0, m == 0 ? 0 : m - 1)), false};
  r.verdict = check_consistency(r.play, x.oracle, x.side);
  if (m > 0) {
    const LimitBracket b = limit_bracket(r.play);
    r.bracket_inside = r.container.contains(Interval{b.lo, b.hi});
  } else {
    r.bracket_inside = true;
  }
  return r;
}

std::vector<std::size_t> replay_failures(const ExtractedTree& x, const std::vector<Path>& codes,
                                         Exec exec) {
  auto check = [&](std::size_t i) { return replay(x, codes[i]).ok(); };
  return exec == Exec::Parallel ? kernels::failing_indices_parallel(codes.size(), check)
                                : kernels::failing_indices_serial(codes.size(), check);
}

TreeReport verify_extraction(const ExtractedTree& x, Exec exec) {
  TreeReport report = validate_tree(*x.tree, x.depth, exec);
  const CantorTree& t = *x.tree;
  const auto add = [&](Clause c, const Path& p, std::string detail) {
    report.violations.push_back({c, p, std::move(detail)});
  };
  try {
    if (x.side == Side::A) {
      const auto root = x.ledger.find("");
      if (root == x.ledger.end() || x.oracle(root->second) != t.root().lo)
        add(Clause::Ledger, "", "root left endpoint is not f(a0, b0)");
    }
    for (std::size_t d = 0; d < x.depth; ++d) {
      for (const auto& p : paths_at_depth(d)) {
        const Interval I = t.expand(p);
        const Interval I0 = t.expand(p + '0');
        const Interval I1 = t.expand(p + '1');
        const Rat u = midpoint(I.lo, I.hi);
        FirstIn pick1 = x.side == Side::A ? x.enumeration.first_in(I.lo, u)
                                          : x.enumeration.first_in(I0.hi, I.hi);
        FirstIn pick0 = x.side == Side::A ? x.enumeration.first_in(I.lo, I1.lo)
                                          : x.enumeration.first_in(u, I.hi);
        const Rat& used1 = x.side == Side::A ? I1.hi : I1.lo;
        const Rat& used0 = x.side == Side::A ? I0.hi : I0.lo;
        for (const auto& [child, pick, used] :
             {std::tuple{p + '0', &pick0, &used0}, std::tuple{p + '1', &pick1, &used1}}) {
          if (pick->value != *used) {
            add(Clause::EnumerationPick, child, "expected " + pick->value.str() + ", found " + used->str());
          }
          const auto idx = x.enum_indices.find(child);
          if (idx == x.enum_indices.end() || idx->second != pick->index)
            add(Clause::EnumerationPick, child, "recorded enumeration index differs");
          const auto led = x.ledger.find(child);
          if (led == x.ledger.end()) {
            add(Clause::Ledger, child, "missing ledger entry");
            continue;
          }
          if (!(led->second == expected_ledger(x, child)))
            add(Clause::Ledger, child, "ledger history does not follow the coded branch");
          const Interval node = t.expand(child);
          const Rat& derived = x.side == Side::A ? node.lo : node.hi;
          const Rat answer = x.oracle(led->second);
          if (answer != derived)
            add(Clause::Ledger, child, "oracle answers " + answer.str() + ", node holds " + derived.str());
        }
        const bool chain =
            x.side == Side::A
                ? strictly_increasing({&I.lo, &I0.lo, &I0.hi, &I1.lo, &I1.hi, &u, &I.hi})
                : strictly_increasing({&I.lo, &u, &I0.lo, &I0.hi, &I1.lo, &I1.hi, &I.hi});
        if (!chain) add(Clause::Ordering, p, "node ordering chain fails");
      }
    }
  } catch (const CantorError& err) {
    add(Clause::Expansion, "", err.what());
  }
  return report;
}

}  // namespace cantor
