#pragma once

// Target sets S inside [a0, b0], with certificate-backed classification.
//
// Uncountability is only ever shown by a perfect subset (a closed interval of
// positive length or a generalized Cantor set); countability only by an
// enumeration. Anything else lands in Unknown.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cantor/cantor_tree.hpp"
#include "cantor/countable.hpp"
#include "cantor/game.hpp"

namespace cantor {

/// host minus a finite union of open intervals: a closed set. The witness
/// shape behind "irrationals"-style targets, whose rationals are swallowed by
/// a summable open cover.
struct CoverComplement {
  Interval host;
  std::vector<OpenInterval> cover;
};

struct SetExpr;
using SetUnion = std::vector<SetExpr>;

struct SetExpr {
  std::variant<Interval, TreeRef, CountableEnum, CoverComplement, SetUnion> node;

  static SetExpr interval(Rat lo, Rat hi);
  static SetExpr tree(TreeRef t) { return {std::move(t)}; }
  static SetExpr enumeration(CountableEnum e) { return {std::move(e)}; }
  static SetExpr cover_complement(Interval host, std::vector<OpenInterval> cover);
  static SetExpr join(SetUnion parts) { return {std::move(parts)}; }

  bool is_union() const { return std::holds_alternative<SetUnion>(node); }
  /// Atoms in order, unions flattened.
  std::vector<const SetExpr*> atoms() const;
};

/// Throws InvalidConfig when an atom reaches outside [a0, b0].
void check_within(const SetExpr& s, const GameConfig& config);

/// Cover used for the irrationals of [lo, hi]: U_n centered on the n-th
/// rational of the standard enumeration (n = 1..count) with radius
/// (hi - lo) / 2^(n+2).
std::vector<OpenInterval> rational_cover(const Interval& host, std::size_t count);

/// Closed components of host minus the cover, left to right (points included).
std::vector<Interval> uncovered_components(const CoverComplement& c);

/// Intervals decide exactly, trees through membership_probe, enumerations by
/// scanning indices 0..depth (In on a hit, Undetermined otherwise). Unions:
/// In dominates, Out needs every atom Out.
Membership member(const SetExpr& s, const Rat& x, std::size_t depth);

// ---------------------------------------------------------------------------
// Certificates

/// A perfect subset of S: a closed interval of positive length or a tree.
struct PerfectWitness {
  std::variant<Interval, TreeRef> shape;
  std::string note;

  /// Outermost interval of the witness.
  Interval hull() const;
};

/// Points given exactly or by their code on a tree.
using Point = std::variant<Rat, Code>;

std::string point_str(const Point& p);

/// A countable set presented by an enumeration.
///   Rational form: the parts are interleaved round-robin; element j of part
///   i sits at index j * parts + i (nothing there once a finite part runs out).
///   Code form: every sequence on `tree` ending in all ones; index 0 is 1^inf,
///   index k >= 1 is p 0 1^inf with p = binary(k) minus its leading 1.
struct CountableWitness {
  std::vector<CountableEnum> parts;
  TreeRef tree;

  std::optional<Point> at(std::uint64_t k) const;
  std::string describe() const;
};

enum class Winner { A, B, Unknown };
std::string_view winner_name(Winner w);

struct Classification {
  Winner winner;
  std::optional<PerfectWitness> perfect;      // Winner::A
  std::optional<CountableWitness> countable;  // Winner::B
  std::string note;
};

/// AWins from the first atom that yields a perfect subset (positive-length
/// interval, tree, or an avoid_open_cover_tree of witness_depth inside a
/// cover complement); BWins when every atom is countable (enumerations and
/// degenerate intervals); Unknown otherwise.
Classification classify_determinacy(const SetExpr& s, std::size_t witness_depth = 5);

/// Every element of every enumeration atom of s appears in the witness
/// (structural check on the interleaving).
bool covers(const CountableWitness& w, const SetExpr& s);

// ---------------------------------------------------------------------------
// Condensation points

enum class CondSide { Plus, Minus };
enum class Tri { Yes, No, Unknown };
std::string_view tri_name(Tri t);

struct CondensationVerdict {
  Point x;
  CondSide side;
  Tri verdict;
  std::string note;
};

/// Is x a right (Plus) or left (Minus) condensation point of S? Intervals
/// [lo, hi]: Plus on [lo, hi), Minus on (lo, hi]. Enumerations: never. Tree
/// points by code: Plus iff the tail has infinitely many 0s, Minus iff
/// infinitely many 1s (needs a definite tail and 0-children left of
/// 1-children along the code). Unions: Yes if any atom says Yes, No if all
/// say No.
CondensationVerdict cond_point(const SetExpr& s, const Point& x, CondSide side,
                               std::size_t depth = 32);

/// A countable set containing S minus its right condensation points, for a
/// single atom: [lo, hi] -> {hi}; tree -> the eventually-all-ones codes;
/// cover complement -> component right ends; enumeration -> itself. Throws
/// UnsupportedAtom for unions.
CountableWitness condensation_partition_probe(const SetExpr& atom);

/// Perfect subset of S strictly inside (x, y) for a right condensation point
/// x: a closed sub-interval, or a subtree whose root lies in (x, y). Throws
/// ProbeFailed when x is not certified Plus-Yes or nothing is found within
/// `depth` levels.
PerfectWitness t15_probe(const SetExpr& s, const Point& x, const Rat& y, std::size_t depth = 64);

/// The subtree of t below path, as a tree of its own (e_n shifted by |path|).
TreeRef subtree(const TreeRef& t, const Path& path);

// ---------------------------------------------------------------------------
// Density of the complement

enum class ProbeOutcome { Hit, PresumedOut, Miss };
std::string_view outcome_name(ProbeOutcome o);

struct DensityCell {
  Interval cell;
  ProbeOutcome outcome;
  std::optional<Rat> point;  // Hit: certified Out. PresumedOut: Undetermined.
};

struct DensityReport {
  std::vector<DensityCell> cells;
  std::size_t hits = 0;
  std::size_t presumed_out = 0;
  std::size_t misses = 0;
};

/// Splits sub into k equal closed cells and looks inside each for a point of
/// the complement of S. Points whose membership stays Undetermined to `depth`
/// count as presumed-out, never as hits.
DensityReport density_probe(const SetExpr& s, const Interval& sub, std::size_t k,
                            std::size_t depth = 16);

}  // namespace cantor
