#pragma once

// Independent reference implementations used to cross-check the engine.
// Deliberately naive: 64-bit fractions, linear scans, no shared code with
// the library beyond converting results to Rat for comparison.

#include <cstdint>
#include <deque>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cantor/cantor_tree.hpp"
#include "cantor/rational.hpp"

namespace oracle {

struct Frac {
  std::int64_t p, q;
};

inline cantor::Rat to_rat(Frac f) { return cantor::Rat(static_cast<long>(f.p), static_cast<long>(f.q)); }

/// First n values of the enumeration of [0, 1]: 0, 1, then the Stern–Brocot
/// tree breadth-first, built from mediants of (left, right) neighbour pairs.
inline std::vector<Frac> stern_brocot_bfs(std::size_t n) {
  std::vector<Frac> out;
  if (n > 0) out.push_back({0, 1});
  if (n > 1) out.push_back({1, 1});
  std::deque<std::pair<Frac, Frac>> queue{{{0, 1}, {1, 1}}};
  while (out.size() < n) {
    auto [l, r] = queue.front();
    queue.pop_front();
    const Frac m{l.p + r.p, l.q + r.q};
    out.push_back(m);
    queue.push_back({l, m});
    queue.push_back({m, r});
  }
  return out;
}

/// Least index k < n with x < enum(k) < y, by scanning; -1 if none.
inline std::int64_t first_in_scan(const std::vector<Frac>& en, const cantor::Rat& x, const cantor::Rat& y) {
  for (std::size_t k = 0; k < en.size(); ++k) {
    const cantor::Rat v = to_rat(en[k]);
    if (x < v && v < y) return static_cast<std::int64_t>(k);
  }
  return -1;
}

/// Every reduced p/q in [0, 1] with q <= max_den.
inline std::vector<Frac> farey(std::int64_t max_den) {
  std::vector<Frac> out;
  for (std::int64_t q = 1; q <= max_den; ++q)
    for (std::int64_t p = 0; p <= q; ++p)
      if (std::gcd(p, q) == 1) out.push_back({p, q});
  return out;
}

/// Pairwise closed-interval intersection, O(n^2).
inline bool pairwise_disjoint(const std::vector<cantor::Interval>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!(xs[i].hi < xs[j].lo || xs[j].hi < xs[i].lo)) return false;
  return true;
}

/// Membership of p/q (0 <= p <= q) in the middle-thirds set on [0, 1] from
/// its base-3 digits: no digit 1, except a final 1 (1 = 0222... in base 3).
/// The remainders repeat within q steps, so q + 1 digits decide.
inline bool middle_thirds_member(std::int64_t p, std::int64_t q) {
  if (p == q) return true;
  for (std::int64_t i = 0; i <= q; ++i) {
    p *= 3;
    const std::int64_t d = p / q;
    p %= q;
    if (d == 1) return p == 0;
    if (p == 0) return true;
  }
  return true;
}

/// Uniform random 0/1 string.
inline std::string random_code(std::mt19937_64& rng, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back((rng() >> 17) & 1U ? '1' : '0');
  return s;
}

}  // namespace oracle
