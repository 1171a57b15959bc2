#pragma once

// Building a generalized Cantor set inside the limit set of an arbitrary
// strategy, and replaying the consistent plays that converge to its points.
//
// A-side (left endpoints come from the strategy f, right endpoints from Q0):
//   a1 = f(a0, b0);  root [c, d] = [a1, b0]
//   for each node p with u_p = (c_p + d_p) / 2:
//     d_p1 = first Q0 element in (c_p, u_p)     c_p1 = f(ledger_p, d_p1)
//     d_p0 = first Q0 element in (c_p, c_p1)    c_p0 = f(ledger_p, d_p0)
//   so that c_p < c_p0 < d_p0 < c_p1 < d_p1 < u_p < d_p.
//
// B-side (mirrored, working upward from the midpoint): root [a0, b0]
//     c_p0 = first Q0 element in (u_p, d_p)     d_p0 = g(ledger_p, c_p0)
//     c_p1 = first Q0 element in (d_p0, d_p)    d_p1 = g(ledger_p, c_p1)
//   so that c_p < u_p < c_p0 < d_p0 < c_p1 < d_p1 < d_p.
//
// Both use e_n = (b0 - a0) / 2^n.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cantor/cantor_tree.hpp"
#include "cantor/enumeration.hpp"
#include "cantor/game.hpp"

namespace cantor {

struct ExtractedTree {
  TreeRef tree;
  Side side;
  StrategyOracle oracle;
  GameConfig config;
  RatEnumeration enumeration;
  std::size_t depth;
  /// Path -> history handed to the oracle when that node's strategy-derived
  /// endpoint was computed. The A-side root entry is the empty history that
  /// produced a1; the B-side root makes no oracle call and has no entry.
  std::map<Path, History> ledger;
  /// Path -> index of the enumeration element used for that node's other
  /// endpoint.
  std::map<Path, EnumIndex> enum_indices;
};

/// Throws OracleContractViolation (naming the inequality the oracle broke)
/// or EmptyInterval / CapExceeded from the enumeration.
ExtractedTree extract_from_A(const StrategyOracle& f, const GameConfig& config, std::size_t depth,
                             const RatEnumeration& enumeration,
                             const std::optional<EnumIndex>& index_cap = std::nullopt);

ExtractedTree extract_from_B(const StrategyOracle& g, const GameConfig& config, std::size_t depth,
                             const RatEnumeration& enumeration,
                             const std::optional<EnumIndex>& index_cap = std::nullopt);

ExtractedTree extract(const StrategyOracle& oracle, const GameConfig& config, std::size_t depth);

struct ReplayResult {
  History play;
  ConsistencyVerdict verdict;
  Interval container;  // I of the code's first m-1 bits
  bool bracket_inside = false;

  bool ok() const { return is_consistent(verdict) && bracket_inside; }
};

/// The play that follows the coded branch for m rounds, checked against the
/// original oracle. A-side: a1 = c, b1 = d_{i1}, a_n = c_{i1..i(n-1)},
/// b_n = d_{i1..in}. B-side: a_n = c_{i1..in}, b_n = d_{i1..in}.
/// Throws DepthExceeded when m exceeds the extraction depth.
ReplayResult replay(const ExtractedTree& x, const Path& code_prefix);

/// Replays every code; returns indices of codes that failed. Parallel
/// unless exec is Serial.
std::vector<std::size_t> replay_failures(const ExtractedTree& x, const std::vector<Path>& codes,
                                         Exec exec = Exec::Parallel);

/// Re-derives every node from its ledger: oracle outputs, enumeration picks,
/// the per-node ordering chain, then validate_tree. Each mismatch is a
/// violation entry.
TreeReport verify_extraction(const ExtractedTree& x, Exec exec = Exec::Parallel);

}  // namespace cantor
