#pragma once

// Generalized Cantor sets as lazily expanded binary interval trees.
//
// A tree is a root interval I plus, for every bit string p, a closed interval
// I_p with
//   (1) 0 < |I_p| < e_n            for |p| = n >= 1
//   (2) I_{p0}, I_{p1} within I_p  (shared endpoints allowed)
//   (3) I_{p0} and I_{p1} disjoint
// The set is the intersection over n of the union of the depth-n intervals.
// A point is addressed by its code: the infinite branch sequence through it.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cantor/errors.hpp"
#include "cantor/rational.hpp"

namespace cantor {

/// Closed interval [lo, hi].
struct Interval {
  Rat lo;
  Rat hi;

  Rat width() const { return hi - lo; }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  /// Contained in the open interval (a, b).
  bool inside_open(const Rat& a, const Rat& b) const { return a < lo && hi < b; }
  bool operator==(const Interval&) const = default;
};

inline bool disjoint(const Interval& x, const Interval& y) { return x.hi < y.lo || y.hi < x.lo; }

/// Open interval (lo, hi); used for covers.
struct OpenInterval {
  Rat lo;
  Rat hi;
  bool contains(const Rat& x) const { return lo < x && x < hi; }
  bool operator==(const OpenInterval&) const = default;
};

/// Branch address as a string of '0' / '1'.
using Path = std::string;

std::vector<Path> paths_at_depth(std::size_t depth);

/// e_n = base * ratio^n with 0 < ratio < 1 (halving by default).
struct BoundRule {
  Rat base;
  Rat ratio{1, 2};

  Rat at(std::size_t n) const;
  bool is_halving() const { return ratio == Rat(1, 2); }
};

class CantorTree;
using TreeRef = std::shared_ptr<const CantorTree>;

class CantorTree : public std::enable_shared_from_this<CantorTree> {
 public:
  using Children = std::pair<Interval, Interval>;
  using Generator = std::function<Children(const Path&, const Interval&)>;

  /// Tree whose children come from a generator on demand.
  static TreeRef generated(Interval root, BoundRule rule, Generator gen, std::string generator_name,
                           bool left_anchored);

  /// Tree with every node up to `depth` given explicitly (root is path "").
  static TreeRef materialized(BoundRule rule, std::map<Path, Interval> nodes, std::size_t depth,
                              bool left_anchored);

  /// Middle-thirds construction on [lo, hi]; e_n = (hi - lo) / 2^n.
  static TreeRef middle_thirds(const Rat& lo, const Rat& hi);

  CantorTree(const CantorTree&) = delete;
  CantorTree& operator=(const CantorTree&) = delete;

  const Interval& root() const { return root_; }
  const BoundRule& rule() const { return rule_; }
  Rat e(std::size_t n) const { return rule_.at(n); }
  bool left_anchored() const { return left_anchored_; }
  bool has_generator() const { return static_cast<bool>(gen_); }
  const std::string& generator_name() const { return generator_name_; }
  /// Deepest level available without a generator (unbounded when generated).
  std::optional<std::size_t> materialized_depth() const { return materialized_depth_; }

  /// Endpoints of I_path, memoized. A generator output that breaks one of
  /// the clauses locally throws GeneratorViolation; asking past the stored
  /// depth of a materialized tree throws DepthExceeded.
  Interval expand(const Path& path) const;

  /// Like expand but records generator output without local checks, so that
  /// validate_tree can report violations instead of throwing.
  Interval expand_unchecked(const Path& path) const;

  /// Snapshot of every node at depth <= n, expanding as needed.
  std::map<Path, Interval> nodes_up_to(std::size_t n) const;

  TreeRef self() const { return shared_from_this(); }

 private:
  CantorTree(Interval root, BoundRule rule) : root_(std::move(root)), rule_(std::move(rule)) {}

  Interval expand_impl(const Path& path, bool checked) const;

  Interval root_;
  BoundRule rule_;
  Generator gen_;
  std::string generator_name_;
  bool left_anchored_ = false;
  std::optional<std::size_t> materialized_depth_;

  mutable std::mutex mu_;
  mutable std::map<Path, Interval> memo_;
};

// ---------------------------------------------------------------------------
// Validation

enum class Clause {
  Width,
  Nesting,
  SiblingDisjoint,
  LevelDisjoint,
  Anchor,
  Expansion,
  // extraction re-derivation
  Ledger,
  EnumerationPick,
  Ordering,
};

std::string_view clause_name(Clause c);

struct Violation {
  Clause clause;
  Path path;
  std::string detail;
};

enum class Exec { Serial, Parallel };

struct TreeReport {
  std::size_t depth = 0;
  std::size_t node_count = 0;  // nodes at depths 1..depth
  std::vector<Violation> violations;

  bool clean() const { return violations.empty(); }
};

/// Expands every node to depth N and checks the three clauses, pairwise
/// disjointness of all same-depth intervals, and (for trees declared
/// left-anchored) c_{p0} = c_p.
TreeReport validate_tree(const CantorTree& t, std::size_t depth, Exec exec = Exec::Parallel);

// ---------------------------------------------------------------------------
// Codes

enum class TailKind { Periodic, Unspecified };

/// Infinite branch sequence: a finite prefix followed by a tail. AllZeros and
/// AllOnes are periodic tails with words "0" and "1".
struct Code {
  TreeRef tree;
  Path prefix;
  TailKind tail = TailKind::Periodic;
  std::string word = "0";

  static Code all_zeros(TreeRef t, Path prefix) { return {std::move(t), std::move(prefix), TailKind::Periodic, "0"}; }
  static Code all_ones(TreeRef t, Path prefix) { return {std::move(t), std::move(prefix), TailKind::Periodic, "1"}; }
  static Code periodic(TreeRef t, Path prefix, std::string word);
  static Code unspecified(TreeRef t, Path prefix) { return {std::move(t), std::move(prefix), TailKind::Unspecified, ""}; }

  bool definite() const { return tail == TailKind::Periodic; }
  bool is_all_zeros() const { return definite() && word == "0"; }
  bool is_all_ones() const { return definite() && word == "1"; }
  /// Tail contains infinitely many copies of `bit`.
  bool tail_has(char bit) const { return definite() && word.find(bit) != std::string::npos; }

  /// Bits 1..k of the sequence. Throws DepthExceeded past the prefix of an
  /// unspecified tail.
  Path bits(std::size_t k) const;

  /// Same sequence with the prefix extended to at least k bits.
  Code materialized(std::size_t k) const;

  /// Shortest prefix, primitive word; two codes denote the same sequence iff
  /// their canonical forms match (up to rotation of the word).
  Code canonical() const;

  std::string str() const;
};

bool same_sequence(const Code& x, const Code& y);

/// Depth-k interval containing the coded point.
Interval point_bounds(const Code& code, std::size_t k);

struct AnchoredValue {
  Rat value;
  Path path;  // x = c_path = c_{path 0^k} for every k
};

/// Exact rational value of an AllZeros code on a left-anchored tree.
/// Throws NotAnchored otherwise.
AnchoredValue anchored_value(const Code& code);

enum class Membership { In, Out, Undetermined };

struct MembershipVerdict {
  Membership kind;
  Path path;          // In: anchored prefix. Undetermined: deepest containing path.
  std::size_t level;  // Out: depth at which x lies in no interval.
};

/// Out(k) is definitive (the set lies inside the depth-k intervals); In only
/// via an anchored left endpoint; Undetermined otherwise.
MembershipVerdict membership_probe(const CantorTree& t, const Rat& x, std::size_t depth);

struct FlipWitness {
  Code flipped;
  Interval x_box;   // depth N+1 interval of the original point
  Interval y_box;   // depth N+1 interval of the flipped point
  Interval shared;  // common depth-N interval
  Rat e_n;
  bool distinct_certified = false;  // x_box and y_box disjoint
  bool distance_certified = false;  // both boxes inside shared, |shared| < e_N
};

/// Flips bit N+1 of the code: a different point of the set within e_N of
/// the original.
FlipWitness flip_witness(const Code& code, std::size_t n);

/// Largest closed sub-interval of `region` (positive length) missing every
/// open interval of `cover`; ties go to the leftmost.
std::optional<Interval> largest_uncovered(const Interval& region,
                                          const std::vector<OpenInterval>& cover);

/// Perfect-subset witness for host minus the union of the cover: a
/// left-anchored tree materialized to depth N, every node disjoint from every
/// cover interval. Requires sum of cover lengths <= max_fraction * |host|.
TreeRef avoid_open_cover_tree(const std::vector<OpenInterval>& cover, const Interval& host,
                              std::size_t depth, const Rat& max_fraction = Rat(1, 2));

}  // namespace cantor
