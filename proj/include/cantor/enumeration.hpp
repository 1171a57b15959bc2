#pragma once

// The fixed enumeration of the rationals in [lo, hi] consumed by the
// extraction constructions: 0, 1, then the Stern–Brocot tree of (0, 1) level
// by level, left to right, mapped affinely onto [lo, hi].
//
//   index:  0    1    2    3    4    5    6    7    8    ...
//   value:  0/1  1/1  1/2  1/3  2/3  1/4  2/5  3/5  3/4  ...
//
// Level L of the tree holds 2^L values starting at index 2^L + 1; the offset
// within the level is the root-to-node path read as a binary number
// (left = 0, right = 1).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

using EnumIndex = BigInt;

/// A Stern–Brocot path stored run-length encoded: (go_right, count) pairs.
struct SbPath {
  std::vector<std::pair<bool, std::uint64_t>> runs;

  std::uint64_t depth() const;
  void push(bool right, std::uint64_t count);
};

/// Shallowest Stern–Brocot node of (0, 1) strictly inside (x, y), where
/// 0 <= x < y <= 1. Runs in O(number of continued-fraction terms).
std::pair<Rat, SbPath> sb_simplest_between(const Rat& x, const Rat& y);

/// Path from the root 1/2 to the node equal to t, 0 < t < 1.
SbPath sb_path_to(const Rat& t);

/// Node reached by following the path from the root.
Rat sb_node(const SbPath& path);

EnumIndex sb_index_of_path(const SbPath& path);

struct FirstIn {
  Rat value;
  EnumIndex index;
};

class RatEnumeration {
 public:
  RatEnumeration(Rat lo, Rat hi);

  /// The standard enumeration of [0, 1].
  static RatEnumeration unit() { return {Rat(0), Rat(1)}; }

  const Rat& lo() const { return lo_; }
  const Rat& hi() const { return hi_; }

  Rat at(const EnumIndex& k) const;
  Rat at(std::uint64_t k) const { return at(EnumIndex(static_cast<unsigned long>(k))); }

  /// Index of a rational in [lo, hi]; every such rational has exactly one.
  EnumIndex index_of(const Rat& r) const;

  /// Least-index element v with x < v < y. Requires lo <= x < y <= hi.
  /// Throws EmptyInterval when x >= y and CapExceeded when index_cap is set
  /// and the answer's index exceeds it.
  FirstIn first_in(const Rat& x, const Rat& y,
                   const std::optional<EnumIndex>& index_cap = std::nullopt) const;

  bool operator==(const RatEnumeration&) const = default;

 private:
  Rat to_unit(const Rat& v) const { return (v - lo_) / (hi_ - lo_); }
  Rat from_unit(const Rat& q) const { return lo_ + q * (hi_ - lo_); }

  Rat lo_;
  Rat hi_;
};

}  // namespace cantor
