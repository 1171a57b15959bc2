#include "cantor/target_sets.hpp"

#include <algorithm>
#include <deque>

namespace cantor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void collect_atoms(const SetExpr& s, std::vector<const SetExpr*>& out) {
  if (const auto* u = std::get_if<SetUnion>(&s.node)) {
    for (const auto& part : *u) collect_atoms(part, out);
  } else {
    out.push_back(&s);
  }
}

bool same_enum(const CountableEnum& x, const CountableEnum& y) {
  if (x.stern_brocot() && y.stern_brocot()) return *x.stern_brocot() == *y.stern_brocot();
  if (x.list() && y.list()) return *x.list() == *y.list();
  return false;
}

// Exact value of a code, when it has one.
std::optional<Rat> exact_value(const Code& c) {
  if (!c.tree->left_anchored() || !c.is_all_zeros()) return std::nullopt;
  try {
    return anchored_value(c).value;
  } catch (const CantorError&) {
    return std::nullopt;
  }
}

// Walks the boxes of a code from the root down; stops at the first box the
// predicate decides (returns Yes/No) or at depth.
template <class Decide>
Tri decide_by_boxes(const Code& c, std::size_t depth, Decide decide) {
  const std::size_t limit = c.definite() ? depth : std::min(depth, c.prefix.size());
  for (std::size_t k = 0; k <= limit; ++k) {
    const Tri t = decide(point_bounds(c, k));
    if (t != Tri::Unknown) return t;
  }
  return Tri::Unknown;
}

// 0-children strictly left of 1-children along the first `len` bits.
bool ordered_along(const Code& c, std::size_t len) {
  const Path bits = c.bits(len);
  for (std::size_t j = 0; j < len; ++j) {
    const Path q = bits.substr(0, j);
    if (!(c.tree->expand(q + '0').hi < c.tree->expand(q + '1').lo)) return false;
  }
  return true;
}

struct AtomVerdict {
  Tri tri;
  std::string note;
};

AtomVerdict code_rule(const Code& c, CondSide side) {
  if (!c.definite()) return {Tri::Unknown, "code tail unspecified"};
  const std::size_t len = c.prefix.size() + 2 * c.word.size();
  if (!ordered_along(c, len)) return {Tri::Unknown, "children not left-to-right along the code"};
  const char bit = side == CondSide::Plus ? '0' : '1';
  if (c.tail_has(bit))
    return {Tri::Yes, std::string("tail repeats ") + bit + ": sibling subtrees accumulate on the " +
                          (side == CondSide::Plus ? "right" : "left")};
  return {Tri::No, std::string("tail has finitely many ") + bit + "s"};
}

// Plus: [lo, hi); Minus: (lo, hi].
bool half_open_contains(const Interval& iv, const Rat& x, CondSide side) {
  return side == CondSide::Plus ? (iv.lo <= x && x < iv.hi) : (iv.lo < x && x <= iv.hi);
}

Tri box_vs_components(const std::vector<Interval>& comps, const Interval& box, CondSide side) {
  bool touches = false;
  for (const auto& c : comps) {
    if (!(c.lo < c.hi)) {
      if (box.contains(c.lo)) touches = true;
      continue;
    }
    const bool inside = side == CondSide::Plus ? (c.lo <= box.lo && box.hi < c.hi)
                                               : (c.lo < box.lo && box.hi <= c.hi);
    if (inside) return Tri::Yes;
    if (!disjoint(c, box)) touches = true;
  }
  return touches ? Tri::Unknown : Tri::No;
}

AtomVerdict atom_cond(const SetExpr& atom, const Point& x, CondSide side, std::size_t depth) {
  return std::visit(
      overloaded{
          [&](const Interval& iv) -> AtomVerdict {
            const std::vector<Interval> comps{iv};
            if (const auto* r = std::get_if<Rat>(&x))
              return {half_open_contains(iv, *r, side) ? Tri::Yes : Tri::No, "interval rule"};
            const Code& c = std::get<Code>(x);
            if (auto v = exact_value(c))
              return {half_open_contains(iv, *v, side) ? Tri::Yes : Tri::No, "interval rule"};
            return {decide_by_boxes(c, depth,
                                    [&](const Interval& box) { return box_vs_components(comps, box, side); }),
                    "interval rule on code boxes"};
          },
          [&](const TreeRef& t) -> AtomVerdict {
            if (const auto* c = std::get_if<Code>(&x); c && c->tree == t) return code_rule(*c, side);
            std::optional<Rat> v;
            if (const auto* r = std::get_if<Rat>(&x)) v = *r;
            else v = exact_value(std::get<Code>(x));
            if (!v) return {Tri::Unknown, "point given on another tree without an exact value"};
            const MembershipVerdict m = membership_probe(*t, *v, depth);
            if (m.kind == Membership::Out) return {Tri::No, "outside the tree (closed set)"};
            if (m.kind == Membership::Undetermined) return {Tri::Unknown, "membership undetermined"};
            return code_rule(Code::all_zeros(t, m.path), side);
          },
          [&](const CountableEnum&) -> AtomVerdict {
            return {Tri::No, "countable atom has no condensation points"};
          },
          [&](const CoverComplement& cc) -> AtomVerdict {
            const auto comps = uncovered_components(cc);
            std::optional<Rat> v;
            if (const auto* r = std::get_if<Rat>(&x)) v = *r;
            else v = exact_value(std::get<Code>(x));
            if (v) {
              for (const auto& c : comps)
                if (c.lo < c.hi && half_open_contains(c, *v, side)) return {Tri::Yes, "inside a component"};
              return {Tri::No, "not inside a component of positive length"};
            }
            return {decide_by_boxes(std::get<Code>(x), depth,
                                    [&](const Interval& box) { return box_vs_components(comps, box, side); }),
                    "component rule on code boxes"};
          },
          [&](const SetUnion&) -> AtomVerdict { return {Tri::Unknown, "not an atom"}; },
      },
      atom.node);
}

std::optional<Rat> point_value_or_box_hi(const Point& x, const Interval& region, const Rat& y,
                                         std::size_t depth) {
  if (const auto* r = std::get_if<Rat>(&x)) return *r;
  const Code& c = std::get<Code>(x);
  if (auto v = exact_value(c)) return v;
  // An upper bound for x that still sits inside the region and below y.
  const std::size_t limit = c.definite() ? depth : std::min(depth, c.prefix.size());
  for (std::size_t k = 0; k <= limit; ++k) {
    const Interval box = point_bounds(c, k);
    if (region.lo <= box.lo && box.hi < region.hi && box.hi < y) return box.hi;
  }
  return std::nullopt;
}

std::optional<PerfectWitness> interval_t15(const Interval& region, const Point& x, const Rat& y,
                                           std::size_t depth, const std::string& note) {
  const auto base = point_value_or_box_hi(x, region, y, depth);
  if (!base) return std::nullopt;
  const Rat top = std::min(y, region.hi);
  if (!(*base < top)) return std::nullopt;
  const Rat delta = top - *base;
  return PerfectWitness{Interval{*base + delta / Rat(4), *base + delta * Rat(3, 4)}, note};
}

std::optional<PerfectWitness> tree_t15(const TreeRef& t, const Point& x, const Rat& y, std::size_t depth) {
  std::optional<Code> code;
  if (const auto* c = std::get_if<Code>(&x); c && c->tree == t) {
    code = *c;
  } else {
    std::optional<Rat> v;
    if (const auto* r = std::get_if<Rat>(&x)) v = *r;
    else v = exact_value(std::get<Code>(x));
    if (!v) return std::nullopt;
    const MembershipVerdict m = membership_probe(*t, *v, depth);
    if (m.kind != Membership::In) return std::nullopt;
    code = Code::all_zeros(t, m.path);
  }
  const std::size_t limit = code->definite() ? depth : std::min(depth, code->prefix.size());
  if (limit == 0) return std::nullopt;
  const Path bits = code->bits(limit);
  for (std::size_t k = 0; k < limit; ++k) {
    if (bits[k] != '0') continue;
    const Path q = bits.substr(0, k);
    const Interval here = t->expand(q + '0');
    const Interval sib = t->expand(q + '1');
    if (here.hi < sib.lo && sib.hi < y)
      return PerfectWitness{subtree(t, q + '1'), "subtree at \"" + q + "1\""};
  }
  return std::nullopt;
}

}  // namespace

SetExpr SetExpr::interval(Rat lo, Rat hi) {
  if (hi < lo) throw CantorError(Errc::EmptyInterval, "interval [" + lo.str() + ", " + hi.str() + "] is empty");
  return {Interval{std::move(lo), std::move(hi)}};
}

SetExpr SetExpr::cover_complement(Interval host, std::vector<OpenInterval> cover) {
  if (host.hi < host.lo) throw CantorError(Errc::EmptyInterval, "host interval is empty");
  return {CoverComplement{std::move(host), std::move(cover)}};
}

std::vector<const SetExpr*> SetExpr::atoms() const {
  std::vector<const SetExpr*> out;
  collect_atoms(*this, out);
  return out;
}

void check_within(const SetExpr& s, const GameConfig& config) {
  const Interval game{config.a0, config.b0};
  for (const SetExpr* a : s.atoms()) {
    const Interval hull = std::visit(
        overloaded{
            [](const Interval& iv) { return iv; },
            [](const TreeRef& t) { return t->root(); },
            [](const CountableEnum& e) { return Interval{e.lo(), e.hi()}; },
            [](const CoverComplement& c) { return c.host; },
            [](const SetUnion&) -> Interval { throw std::logic_error("unreachable"); },
        },
        a->node);
    if (!game.contains(hull))
      throw CantorError(Errc::InvalidConfig, "target atom [" + hull.lo.str() + ", " + hull.hi.str() +
                                                 "] leaves the game interval",
                        Bound{config.a0, config.b0});
  }
}

std::vector<OpenInterval> rational_cover(const Interval& host, std::size_t count) {
  const RatEnumeration q(host.lo, host.hi);
  const Rat w = host.width();
  std::vector<OpenInterval> out;
  out.reserve(count);
  for (std::size_t n = 1; n <= count; ++n) {
    const Rat c = q.at(static_cast<std::uint64_t>(n - 1));
    const Rat r = w * inv_pow2(static_cast<unsigned>(n + 2));
    out.push_back({c - r, c + r});
  }
  return out;
}

std::vector<Interval> uncovered_components(const CoverComplement& c) {
  std::vector<OpenInterval> sorted;
  for (const auto& u : c.cover)
    if (u.lo < u.hi) sorted.push_back(u);
  std::sort(sorted.begin(), sorted.end(),
            [](const OpenInterval& a, const OpenInterval& b) { return a.lo < b.lo; });
  std::vector<OpenInterval> merged;
  for (const auto& u : sorted) {
    if (!merged.empty() && u.lo < merged.back().hi) {
      merged.back().hi = std::max(merged.back().hi, u.hi);
    } else {
      merged.push_back(u);
    }
  }
  std::vector<Interval> out;
  Rat cursor = c.host.lo;
  for (const auto& m : merged) {
    if (m.hi <= c.host.lo) continue;
    if (m.lo >= c.host.hi) break;
    if (m.lo >= cursor) out.push_back({cursor, m.lo});
    cursor = m.hi;
    if (cursor > c.host.hi) return out;
  }
  out.push_back({cursor, c.host.hi});
  return out;
}

Membership member(const SetExpr& s, const Rat& x, std::size_t depth) {
  return std::visit(
      overloaded{
          [&](const Interval& iv) { return iv.contains(x) ? Membership::In : Membership::Out; },
          [&](const TreeRef& t) { return membership_probe(*t, x, depth).kind; },
          [&](const CountableEnum& e) {
            if (const auto* sb = e.stern_brocot()) {
              if (x < sb->lo() || sb->hi() < x) return Membership::Out;
              return sb->index_of(x) <= BigInt(static_cast<unsigned long>(depth)) ? Membership::In
                                                                                   : Membership::Undetermined;
            }
            const auto& xs = *e.list();
            const auto it = std::find(xs.begin(), xs.end(), x);
            if (it == xs.end()) return Membership::Out;  // a finite list is known in full
            return static_cast<std::size_t>(it - xs.begin()) <= depth ? Membership::In
                                                                      : Membership::Undetermined;
          },
          [&](const CoverComplement& c) {
            if (!c.host.contains(x)) return Membership::Out;
            for (const auto& u : c.cover)
              if (u.contains(x)) return Membership::Out;
            return Membership::In;
          },
          [&](const SetUnion& parts) {
            bool all_out = true;
            for (const auto& p : parts) {
              const Membership m = member(p, x, depth);
              if (m == Membership::In) return Membership::In;
              if (m != Membership::Out) all_out = false;
            }
            return all_out ? Membership::Out : Membership::Undetermined;
          },
      },
      s.node);
}

Interval PerfectWitness::hull() const {
  if (const auto* iv = std::get_if<Interval>(&shape)) return *iv;
  return std::get<TreeRef>(shape)->root();
}

std::string point_str(const Point& p) {
  if (const auto* r = std::get_if<Rat>(&p)) return r->str();
  return std::get<Code>(p).str();
}

std::optional<Point> CountableWitness::at(std::uint64_t k) const {
  if (tree) {
    if (k == 0) return Code::all_ones(tree, "");
    Path p;
    for (int bit = 63 - __builtin_clzll(k) - 1; bit >= 0; --bit) p.push_back(((k >> bit) & 1U) ? '1' : '0');
    return Code::all_ones(tree, p + '0');
  }
  if (parts.empty()) return std::nullopt;
  const std::uint64_t m = parts.size();
  auto v = parts[k % m].at(k / m);
  if (!v) return std::nullopt;
  return *v;
}

std::string CountableWitness::describe() const {
  if (tree) return "eventually-all-ones codes on " + tree->generator_name();
  std::string out = "interleave(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i].descriptor();
  }
  return out + ")";
}

std::string_view winner_name(Winner w) {
  switch (w) {
    case Winner::A: return "AWins";
    case Winner::B: return "BWins";
    case Winner::Unknown: return "Unknown";
  }
  return "?";
}

Classification classify_determinacy(const SetExpr& s, std::size_t witness_depth) {
  std::vector<CountableEnum> countable;
  std::vector<std::string> unresolved;
  for (const SetExpr* a : s.atoms()) {
    if (const auto* iv = std::get_if<Interval>(&a->node)) {
      if (iv->lo < iv->hi) return {Winner::A, PerfectWitness{*iv, "interval atom"}, std::nullopt, ""};
      countable.emplace_back(std::vector<Rat>{iv->lo});
    } else if (const auto* t = std::get_if<TreeRef>(&a->node)) {
      const TreeReport r = validate_tree(**t, witness_depth);
      if (r.clean()) return {Winner::A, PerfectWitness{*t, "tree atom"}, std::nullopt, ""};
      unresolved.push_back("tree atom fails validation at depth " + std::to_string(witness_depth));
    } else if (const auto* e = std::get_if<CountableEnum>(&a->node)) {
      countable.push_back(*e);
    } else if (const auto* cc = std::get_if<CoverComplement>(&a->node)) {
      try {
        TreeRef w = avoid_open_cover_tree(cc->cover, cc->host, witness_depth);
        if (validate_tree(*w, witness_depth).clean())
          return {Winner::A, PerfectWitness{w, "avoid-open-cover tree"}, std::nullopt, ""};
      } catch (const CantorError& err) {
        if (err.code() != Errc::CoverTooLarge && err.code() != Errc::ConstructionStuck) throw;
      }
      std::vector<Rat> points;
      for (const auto& c : uncovered_components(*cc)) {
        if (c.lo < c.hi) return {Winner::A, PerfectWitness{c, "uncovered component"}, std::nullopt, ""};
        points.push_back(c.lo);
      }
      if (!points.empty()) countable.emplace_back(std::move(points));
    }
  }
  if (!unresolved.empty()) {
    std::string note;
    for (const auto& u : unresolved) note += (note.empty() ? "" : "; ") + u;
    return {Winner::Unknown, std::nullopt, std::nullopt, note};
  }
  return {Winner::B, std::nullopt, CountableWitness{std::move(countable), nullptr},
          "every atom is countable"};
}

bool covers(const CountableWitness& w, const SetExpr& s) {
  if (w.tree) return false;
  for (const SetExpr* a : s.atoms()) {
    if (const auto* e = std::get_if<CountableEnum>(&a->node)) {
      if (std::none_of(w.parts.begin(), w.parts.end(), [&](const CountableEnum& p) { return same_enum(p, *e); }))
        return false;
    } else if (const auto* iv = std::get_if<Interval>(&a->node)) {
      if (iv->lo < iv->hi) return false;
      const bool listed = std::any_of(w.parts.begin(), w.parts.end(), [&](const CountableEnum& p) {
        return p.list() && std::find(p.list()->begin(), p.list()->end(), iv->lo) != p.list()->end();
      });
      if (!listed) return false;
    } else {
      return false;
    }
  }
  return true;
}

std::string_view tri_name(Tri t) {
  switch (t) {
    case Tri::Yes: return "Yes";
    case Tri::No: return "No";
    case Tri::Unknown: return "Unknown";
  }
  return "?";
}

CondensationVerdict cond_point(const SetExpr& s, const Point& x, CondSide side, std::size_t depth) {
  bool all_no = true;
  std::string notes;
  for (const SetExpr* a : s.atoms()) {
    const AtomVerdict v = atom_cond(*a, x, side, depth);
    if (v.tri == Tri::Yes) return {x, side, Tri::Yes, v.note};
    if (v.tri != Tri::No) all_no = false;
    if (!notes.empty()) notes += "; ";
    notes += v.note;
  }
  return {x, side, all_no ? Tri::No : Tri::Unknown, notes};
}

CountableWitness condensation_partition_probe(const SetExpr& atom) {
  return std::visit(
      overloaded{
          [](const Interval& iv) { return CountableWitness{{CountableEnum(std::vector<Rat>{iv.hi})}, nullptr}; },
          [](const TreeRef& t) { return CountableWitness{{}, t}; },
          [](const CountableEnum& e) { return CountableWitness{{e}, nullptr}; },
          [](const CoverComplement& c) {
            std::vector<Rat> ends;
            for (const auto& comp : uncovered_components(c)) ends.push_back(comp.hi);
            if (ends.empty()) return CountableWitness{{}, nullptr};
            return CountableWitness{{CountableEnum(std::move(ends))}, nullptr};
          },
          [](const SetUnion&) -> CountableWitness {
            throw CantorError(Errc::UnsupportedAtom, "condensation partition works on single atoms");
          },
      },
      atom.node);
}

PerfectWitness t15_probe(const SetExpr& s, const Point& x, const Rat& y, std::size_t depth) {
  for (const SetExpr* a : s.atoms()) {
    if (atom_cond(*a, x, CondSide::Plus, depth).tri != Tri::Yes) continue;
    std::optional<PerfectWitness> w = std::visit(
        overloaded{
            [&](const Interval& iv) { return interval_t15(iv, x, y, depth, "closed sub-interval"); },
            [&](const TreeRef& t) { return tree_t15(t, x, y, depth); },
            [&](const CountableEnum&) -> std::optional<PerfectWitness> { return std::nullopt; },
            [&](const CoverComplement& cc) -> std::optional<PerfectWitness> {
              for (const auto& c : uncovered_components(cc)) {
                if (!(c.lo < c.hi)) continue;
                if (auto w = interval_t15(c, x, y, depth, "sub-interval of an uncovered component")) return w;
              }
              return std::nullopt;
            },
            [&](const SetUnion&) -> std::optional<PerfectWitness> { return std::nullopt; },
        },
        a->node);
    if (w) return *w;
  }
  throw CantorError(Errc::ProbeFailed, "no perfect subset inside (" + point_str(x) + ", " + y.str() +
                                           ") found to depth " + std::to_string(depth));
}

TreeRef subtree(const TreeRef& t, const Path& path) {
  const Interval root = t->expand(path);
  auto gen = [t, path](const Path& p, const Interval&) -> CantorTree::Children {
    return {t->expand(path + p + '0'), t->expand(path + p + '1')};
  };
  return CantorTree::generated(root, BoundRule{t->e(path.size()), t->rule().ratio}, gen,
                               t->generator_name() + "@" + path, t->left_anchored());
}

std::string_view outcome_name(ProbeOutcome o) {
  switch (o) {
    case ProbeOutcome::Hit: return "hit";
    case ProbeOutcome::PresumedOut: return "presumed-out";
    case ProbeOutcome::Miss: return "miss";
  }
  return "?";
}

namespace {

// Midpoint of (lo, hi) intersected with the open cell, if nonempty.
void offer_gap(const Rat& lo, const Rat& hi, const Interval& cell, std::vector<Rat>& out) {
  const Rat l = std::max(lo, cell.lo);
  const Rat h = std::min(hi, cell.hi);
  if (l < h) out.push_back(midpoint(l, h));
}

std::vector<Rat> candidates(const SetExpr& s, const Interval& cell, std::size_t depth) {
  std::vector<Rat> out;
  for (const SetExpr* a : s.atoms()) {
    if (const auto* iv = std::get_if<Interval>(&a->node)) {
      if (cell.lo < iv->lo) offer_gap(cell.lo, iv->lo, cell, out);
      if (iv->hi < cell.hi) offer_gap(iv->hi, cell.hi, cell, out);
    } else if (const auto* t = std::get_if<TreeRef>(&a->node)) {
      const Interval root = (*t)->root();
      if (cell.lo < root.lo) offer_gap(cell.lo, root.lo, cell, out);
      if (root.hi < cell.hi) offer_gap(root.hi, cell.hi, cell, out);
      const std::size_t cap = std::min<std::size_t>(depth, 12);
      if ((*t)->materialized_depth() && *(*t)->materialized_depth() < cap) continue;
      std::deque<Path> queue{""};
      while (!queue.empty()) {
        const Path p = queue.front();
        queue.pop_front();
        if (p.size() >= cap) continue;
        const Interval l = (*t)->expand(p + '0');
        const Interval r = (*t)->expand(p + '1');
        const Interval& first = l.lo < r.lo ? l : r;
        const Interval& second = l.lo < r.lo ? r : l;
        offer_gap(first.hi, second.lo, cell, out);
        if (!disjoint(l, cell)) queue.push_back(p + '0');
        if (!disjoint(r, cell)) queue.push_back(p + '1');
      }
    } else if (const auto* cc = std::get_if<CoverComplement>(&a->node)) {
      for (const auto& u : cc->cover) offer_gap(u.lo, u.hi, cell, out);
      if (cell.lo < cc->host.lo) offer_gap(cell.lo, cc->host.lo, cell, out);
      if (cc->host.hi < cell.hi) offer_gap(cc->host.hi, cell.hi, cell, out);
    }
  }
  const Rat w = cell.width();
  for (unsigned m = 1; m <= 5; ++m)
    for (std::uint64_t j = 1; j < (1ULL << m); j += 2)
      out.push_back(cell.lo + w * Rat(static_cast<long>(j)) * inv_pow2(m));
  return out;
}

}  // namespace

DensityReport density_probe(const SetExpr& s, const Interval& sub, std::size_t k, std::size_t depth) {
  if (k == 0) throw CantorError(Errc::InvalidConfig, "density probe needs at least one cell");
  if (!(sub.lo < sub.hi)) throw CantorError(Errc::EmptyInterval, "density probe needs a proper interval");
  DensityReport report;
  const Rat step = sub.width() / Rat(static_cast<long>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const Interval cell{sub.lo + step * Rat(static_cast<long>(i)), sub.lo + step * Rat(static_cast<long>(i + 1))};
    DensityCell result{cell, ProbeOutcome::Miss, std::nullopt};
    for (const Rat& x : candidates(s, cell, depth)) {
      const Membership m = member(s, x, depth);
      if (m == Membership::Out) {
        result = {cell, ProbeOutcome::Hit, x};
        break;
      }
      if (m == Membership::Undetermined && result.outcome == ProbeOutcome::Miss)
        result = {cell, ProbeOutcome::PresumedOut, x};
    }
    switch (result.outcome) {
      case ProbeOutcome::Hit: ++report.hits; break;
      case ProbeOutcome::PresumedOut: ++report.presumed_out; break;
      case ProbeOutcome::Miss: ++report.misses; break;
    }
    report.cells.push_back(std::move(result));
  }
  return report;
}

}  // namespace cantor
