#include "cantor/cantor_tree.hpp"

#include <algorithm>

#include "cantor/kernels.hpp"

namespace cantor {

std::vector<Path> paths_at_depth(std::size_t depth) {
  std::vector<Path> out{""};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<Path> next;
    next.reserve(out.size() * 2);
    for (const auto& p : out) {
      next.push_back(p + '0');
      next.push_back(p + '1');
    }
    out = std::move(next);
  }
  return out;
}

Rat BoundRule::at(std::size_t n) const {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), ratio.num().get_mpz_t(), n);
  mpz_pow_ui(den.get_mpz_t(), ratio.den().get_mpz_t(), n);
  return base * Rat(num, den);
}

TreeRef CantorTree::generated(Interval root, BoundRule rule, Generator gen,
                              std::string generator_name, bool left_anchored) {
  std::shared_ptr<CantorTree> t(new CantorTree(std::move(root), std::move(rule)));
  t->gen_ = std::move(gen);
  t->generator_name_ = std::move(generator_name);
  t->left_anchored_ = left_anchored;
  t->memo_.emplace("", t->root_);
  return t;
}

TreeRef CantorTree::materialized(BoundRule rule, std::map<Path, Interval> nodes,
                                 std::size_t depth, bool left_anchored) {
  auto root = nodes.find("");
  if (root == nodes.end())
    throw CantorError(Errc::GeneratorViolation, "materialized tree needs a root node");
  std::shared_ptr<CantorTree> t(new CantorTree(root->second, std::move(rule)));
  t->left_anchored_ = left_anchored;
  t->materialized_depth_ = depth;
  t->memo_ = std::move(nodes);
  return t;
}

TreeRef CantorTree::middle_thirds(const Rat& lo, const Rat& hi) {
  auto gen = [](const Path&, const Interval& p) -> Children {
    const Rat third = p.width() / Rat(3);
    return {Interval{p.lo, p.lo + third}, Interval{p.hi - third, p.hi}};
  };
  return generated(Interval{lo, hi}, BoundRule{hi - lo}, gen, "middle-thirds", true);
}

namespace {

std::optional<Violation> local_check(const Path& parent_path, const Interval& parent,
                                     const CantorTree::Children& kids, const Rat& e) {
  const Interval* both[2] = {&kids.first, &kids.second};
  for (int b = 0; b < 2; ++b) {
    const Path p = parent_path + static_cast<char>('0' + b);
    const Interval& k = *both[b];
    if (!(k.lo < k.hi) || !(k.width() < e))
      return Violation{Clause::Width, p, "width " + k.width().str() + " not in (0, " + e.str() + ")"};
    if (!parent.contains(k))
      return Violation{Clause::Nesting, p, "child leaves parent interval"};
  }
  if (!disjoint(kids.first, kids.second))
    return Violation{Clause::SiblingDisjoint, parent_path + '0', "siblings intersect"};
  return std::nullopt;
}

}  // namespace

Interval CantorTree::expand(const Path& path) const { return expand_impl(path, true); }

Interval CantorTree::expand_unchecked(const Path& path) const { return expand_impl(path, false); }

Interval CantorTree::expand_impl(const Path& path, bool checked) const {
  std::lock_guard lock(mu_);
  if (auto it = memo_.find(path); it != memo_.end()) return it->second;
  if (!gen_) {
    throw CantorError(Errc::DepthExceeded,
                      "node \"" + path + "\" is not stored in this materialized tree");
  }
  // Longest memoized prefix, then expand forward one level at a time.
  std::size_t known = path.size();
  while (known > 0 && !memo_.contains(path.substr(0, known))) --known;
  for (std::size_t len = known; len < path.size(); ++len) {
    const Path parent_path = path.substr(0, len);
    const Interval parent = memo_.at(parent_path);
    Children kids = gen_(parent_path, parent);
    if (checked) {
      if (auto v = local_check(parent_path, parent, kids, rule_.at(len + 1))) {
        throw CantorError(Errc::GeneratorViolation,
                          "generator breaks clause " + std::string(clause_name(v->clause)) +
                              " at \"" + v->path + "\": " + v->detail);
      }
    }
    memo_.emplace(parent_path + '0', std::move(kids.first));
    memo_.emplace(parent_path + '1', std::move(kids.second));
  }
  return memo_.at(path);
}

std::map<Path, Interval> CantorTree::nodes_up_to(std::size_t n) const {
  std::map<Path, Interval> out;
  for (std::size_t d = 0; d <= n; ++d)
    for (const auto& p : paths_at_depth(d)) out.emplace(p, expand_unchecked(p));
  return out;
}

std::string_view clause_name(Clause c) {
  switch (c) {
    case Clause::Width: return "width-bound";
    case Clause::Nesting: return "nesting";
    case Clause::SiblingDisjoint: return "sibling-disjoint";
    case Clause::LevelDisjoint: return "level-disjoint";
    case Clause::Anchor: return "left-anchor";
    case Clause::Expansion: return "expansion";
    case Clause::Ledger: return "ledger";
    case Clause::EnumerationPick: return "enumeration-pick";
    case Clause::Ordering: return "ordering-chain";
  }
  return "unknown";
}

TreeReport validate_tree(const CantorTree& t, std::size_t depth, Exec exec) {
  TreeReport report;
  report.depth = depth;
  for (std::size_t d = 1; d <= depth; ++d) {
    const auto paths = paths_at_depth(d);
    std::vector<Interval> level;
    level.reserve(paths.size());
    bool level_ok = true;
    for (const auto& p : paths) {
      try {
        level.push_back(t.expand_unchecked(p));
      } catch (const CantorError& err) {
        report.violations.push_back({Clause::Expansion, p, err.what()});
        level_ok = false;
      }
    }
    if (!level_ok) break;
    report.node_count += level.size();

    const Rat e = t.e(d);
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const Path& p = paths[i];
      const Interval& node = level[i];
      if (!(node.lo < node.hi) || !(node.width() < e)) {
        report.violations.push_back(
            {Clause::Width, p, "width " + node.width().str() + " not in (0, " + e.str() + ")"});
      }
      const Path parent_path = p.substr(0, p.size() - 1);
      const Interval parent = t.expand_unchecked(parent_path);
      if (!parent.contains(node))
        report.violations.push_back({Clause::Nesting, p, "child leaves parent interval"});
      if (p.back() == '0') {
        if (!disjoint(node, level[i + 1]))
          report.violations.push_back({Clause::SiblingDisjoint, p, "siblings intersect"});
        if (t.left_anchored() && node.lo != parent.lo)
          report.violations.push_back({Clause::Anchor, p, "c_p0 differs from c_p"});
      }
    }

    const auto overlaps = exec == Exec::Parallel ? kernels::overlapping_pairs_parallel(level)
                                                 : kernels::overlapping_pairs_serial(level);
    for (const auto& [i, j] : overlaps) {
      report.violations.push_back(
          {Clause::LevelDisjoint, paths[i], "intersects \"" + paths[j] + "\""});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Codes

namespace {

std::string primitive_word(const std::string& w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t i = d; i < n && repeats; ++i) repeats = w[i] == w[i - d];
    if (repeats) return w.substr(0, d);
  }
  return w;
}

void check_bits(const std::string& s) {
  for (char ch : s)
    if (ch != '0' && ch != '1') throw CantorError(Errc::ParseError, "code bits must be 0 or 1");
}

}  // namespace

Code Code::periodic(TreeRef t, Path prefix, std::string word) {
  if (word.empty()) throw CantorError(Errc::ParseError, "periodic tail needs a word");
  check_bits(prefix);
  check_bits(word);
  return {std::move(t), std::move(prefix), TailKind::Periodic, std::move(word)};
}

Path Code::bits(std::size_t k) const {
  if (k <= prefix.size()) return prefix.substr(0, k);
  if (tail == TailKind::Unspecified)
    throw CantorError(Errc::DepthExceeded, "code tail is unspecified beyond bit " +
                                               std::to_string(prefix.size()));
  Path out = prefix;
  for (std::size_t j = 0; out.size() < k; ++j) out.push_back(word[j % word.size()]);
  return out;
}

Code Code::materialized(std::size_t k) const {
  if (k <= prefix.size()) return *this;
  Code out = *this;
  const std::size_t added = k - prefix.size();
  out.prefix = bits(k);
  const std::size_t r = added % word.size();
  out.word = word.substr(r) + word.substr(0, r);
  return out;
}

Code Code::canonical() const {
  if (tail == TailKind::Unspecified) return *this;
  Code out = *this;
  out.word = primitive_word(word);
  while (!out.prefix.empty() && out.prefix.back() == out.word.back()) {
    out.prefix.pop_back();
    out.word = out.word.back() + out.word.substr(0, out.word.size() - 1);
  }
  return out;
}

std::string Code::str() const {
  if (tail == TailKind::Unspecified) return prefix + "...";
  return prefix + "(" + word + ")";
}

bool same_sequence(const Code& x, const Code& y) {
  if (x.tree != y.tree || x.tail != y.tail) return false;
  const Code a = x.canonical();
  const Code b = y.canonical();
  return a.prefix == b.prefix && a.word == b.word;
}

Interval point_bounds(const Code& code, std::size_t k) { return code.tree->expand(code.bits(k)); }

AnchoredValue anchored_value(const Code& code) {
  if (!code.tree->left_anchored())
    throw CantorError(Errc::NotAnchored, "tree is not left-anchored");
  if (!code.is_all_zeros())
    throw CantorError(Errc::NotAnchored, "code " + code.str() + " does not end in all zeros");
  const Interval node = code.tree->expand(code.prefix);
  try {
    if (code.tree->expand(code.prefix + '0').lo != node.lo)
      throw CantorError(Errc::NotAnchored, "c_p0 differs from c_p at \"" + code.prefix + "\"");
  } catch (const CantorError& err) {
    if (err.code() != Errc::DepthExceeded) throw;
  }
  return {node.lo, code.prefix};
}

MembershipVerdict membership_probe(const CantorTree& t, const Rat& x, std::size_t depth) {
  Path p;
  Interval node = t.expand(p);
  if (!node.contains(x)) return {Membership::Out, "", 0};
  for (;;) {
    if (t.left_anchored() && node.lo == x) return {Membership::In, p, p.size()};
    if (p.size() >= depth) return {Membership::Undetermined, p, p.size()};
    const Interval left = t.expand(p + '0');
    const Interval right = t.expand(p + '1');
    if (left.contains(x)) {
      p.push_back('0');
      node = left;
    } else if (right.contains(x)) {
      p.push_back('1');
      node = right;
    } else {
      return {Membership::Out, p, p.size() + 1};
    }
  }
}

FlipWitness flip_witness(const Code& code, std::size_t n) {
  const Code x = code.materialized(n + 1);
  Code y = x;
  y.prefix[n] = y.prefix[n] == '0' ? '1' : '0';
  FlipWitness w{y, point_bounds(x, n + 1), point_bounds(y, n + 1), point_bounds(x, n),
                code.tree->e(n)};
  w.distinct_certified = disjoint(w.x_box, w.y_box);
  w.distance_certified = w.shared.contains(w.x_box) && w.shared.contains(w.y_box) &&
                         w.shared.width() < w.e_n;
  return w;
}

// ---------------------------------------------------------------------------
// Open-cover avoidance

std::optional<Interval> largest_uncovered(const Interval& region,
                                          const std::vector<OpenInterval>& cover) {
  std::vector<OpenInterval> sorted = cover;
  std::sort(sorted.begin(), sorted.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::optional<Interval> best;
  const auto offer = [&](const Rat& lo, const Rat& hi) {
    if (!(lo < hi)) return;
    if (!best || best->width() < hi - lo) best = Interval{lo, hi};
  };
  // `cursor` is the left end of the current uncovered stretch; the points
  // equal to an open interval's endpoint stay uncovered.
  Rat cursor = region.lo;
  for (const auto& u : sorted) {
    if (!(u.lo < u.hi)) continue;
    if (u.hi <= cursor) continue;
    if (u.lo >= region.hi) break;
    if (u.lo > cursor) offer(cursor, u.lo);
    cursor = std::max(cursor, u.hi);
    if (cursor >= region.hi) return best;
  }
  offer(cursor, region.hi);
  return best;
}

TreeRef avoid_open_cover_tree(const std::vector<OpenInterval>& cover, const Interval& host,
                              std::size_t depth, const Rat& max_fraction) {
  Rat total{0};
  for (const auto& u : cover) total += u.hi - u.lo;
  if (total > max_fraction * host.width()) {
    throw CantorError(Errc::CoverTooLarge, "cover length " + total.str() + " exceeds " +
                                               (max_fraction * host.width()).str());
  }
  const auto root = largest_uncovered(host, cover);
  if (!root) throw CantorError(Errc::ConstructionStuck, "host is fully covered at path \"\"");

  auto gen = [cover](const Path& p, const Interval& node) -> CantorTree::Children {
    const Rat w = node.width();
    const Interval left_region{node.lo, node.lo + w * Rat(3, 8)};
    const Interval right_region{node.lo + w * Rat(5, 8), node.hi};
    auto left = largest_uncovered(left_region, cover);
    auto right = largest_uncovered(right_region, cover);
    if (!left || !right)
      throw CantorError(Errc::ConstructionStuck, "no uncovered piece below path \"" + p + "\"");
    return {*left, *right};
  };
  // Anchoring holds because every node below the root is uncovered.
  TreeRef t = CantorTree::generated(*root, BoundRule{host.width()}, gen, "avoid-open-cover", true);
  for (const auto& p : paths_at_depth(depth)) t->expand(p);
  return t;
}

}  // namespace cantor
