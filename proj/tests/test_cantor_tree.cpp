#include <doctest.h>

#include <random>

#include "cantor/cantor_tree.hpp"
#include "cantor/kernels.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

TreeRef unit_thirds() { return CantorTree::middle_thirds(Rat(0), Rat(1)); }

// Same shape as the middle-thirds generator but with a broken child.
TreeRef faulty_tree() {
  auto gen = [](const Path& p, const Interval& iv) -> CantorTree::Children {
    const Rat t = iv.width() / Rat(3);
    if (p.empty()) return {Interval{iv.lo, iv.lo + t * Rat(2)}, Interval{iv.hi - t * Rat(2), iv.hi}};
    return {Interval{iv.lo, iv.lo + t}, Interval{iv.hi - t, iv.hi}};
  };
  return CantorTree::generated(Interval{Rat(0), Rat(1)}, BoundRule{Rat(1)}, gen, "faulty", true);
}

}  // namespace

TEST_CASE("middle-thirds nodes") {
  const TreeRef t = unit_thirds();
  CHECK(t->expand("0") == Interval{Rat(0), Rat(1, 3)});
  CHECK(t->expand("1") == Interval{Rat(2, 3), Rat(1)});
  CHECK(t->expand("01") == Interval{Rat(2, 9), Rat(1, 3)});
  CHECK(t->e(3) == Rat(1, 8));
  const TreeReport r = validate_tree(*t, 8);
  CHECK(r.clean());
  CHECK(r.node_count == 510);
}

TEST_CASE("level disjointness against a quadratic check") {
  const TreeRef t = unit_thirds();
  for (std::size_t n = 1; n <= 6; ++n) {
    std::vector<Interval> level;
    for (const auto& p : paths_at_depth(n)) level.push_back(t->expand(p));
    CHECK(oracle::pairwise_disjoint(level));
    CHECK(kernels::overlapping_pairs_serial(level).empty());
  }
}

TEST_CASE("validation reports each broken clause") {
  const TreeRef bad = faulty_tree();
  CHECK_THROWS_AS(bad->expand("010"), CantorError);  // checked expansion refuses
  const TreeReport serial = validate_tree(*faulty_tree(), 4, Exec::Serial);
  const TreeReport parallel = validate_tree(*faulty_tree(), 4, Exec::Parallel);
  CHECK_FALSE(serial.clean());
  CHECK(serial.violations.size() == parallel.violations.size());
  bool width = false, sibling = false;
  for (const auto& v : serial.violations) {
    width |= v.clause == Clause::Width;
    sibling |= v.clause == Clause::SiblingDisjoint;
  }
  CHECK(width);
  CHECK(sibling);
}

TEST_CASE("materialized trees stop at their depth") {
  std::map<Path, Interval> nodes{{"", {Rat(0), Rat(1)}},
                                 {"0", {Rat(0), Rat(1, 4)}},
                                 {"1", {Rat(3, 4), Rat(1)}}};
  const TreeRef t = CantorTree::materialized(BoundRule{Rat(1)}, nodes, 1, true);
  CHECK(validate_tree(*t, 1).clean());
  try {
    t->expand("00");
    FAIL("expanded past the stored depth");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::DepthExceeded);
  }
}

TEST_CASE("codes: canonical forms and prefixes") {
  const TreeRef t = unit_thirds();
  const Code x = Code::periodic(t, "0101", "01");
  CHECK(x.canonical().prefix.empty());
  CHECK(same_sequence(x, Code::periodic(t, "0", "10")));
  CHECK_FALSE(same_sequence(x, Code::periodic(t, "", "10")));
  CHECK(same_sequence(Code::all_zeros(t, "1000"), Code::all_zeros(t, "1")));
  CHECK_FALSE(same_sequence(Code::all_zeros(t, "1"), Code::all_ones(t, "1")));
  CHECK(x.bits(7) == "0101010");
  const Code u = Code::unspecified(t, "011");
  CHECK(u.bits(3) == "011");
  CHECK_THROWS_AS(u.bits(4), CantorError);
}

TEST_CASE("anchored values are exact members") {
  const TreeRef t = unit_thirds();
  CHECK(anchored_value(Code::all_zeros(t, "1")).value == Rat(2, 3));
  CHECK(anchored_value(Code::all_zeros(t, "01")).value == Rat(2, 9));
  CHECK_THROWS_AS(anchored_value(Code::all_ones(t, "")), CantorError);
}

TEST_CASE("membership probe against ternary digits") {
  const TreeRef t = unit_thirds();
  CHECK(membership_probe(*t, Rat(1, 2), 8).kind == Membership::Out);
  CHECK(membership_probe(*t, Rat(1, 2), 8).level == 1);
  const auto in = membership_probe(*t, Rat(2, 3), 8);
  CHECK(in.kind == Membership::In);
  CHECK(in.path == "1");
  // 1/4 = 0.0202... in base 3: a member with no anchored certificate.
  CHECK(oracle::middle_thirds_member(1, 4));
  CHECK(membership_probe(*t, Rat(1, 4), 8).kind == Membership::Undetermined);
  // Out is sound, and anchored In agrees, for every p/q with q <= 40.
  for (long q = 1; q <= 40; ++q) {
    for (long p = 0; p <= q; ++p) {
      const Rat x(p, q);
      const auto v = membership_probe(*t, x, 12);
      const bool truth = oracle::middle_thirds_member(x.num().get_si(), x.den().get_si());
      if (v.kind == Membership::Out) CHECK_FALSE(truth);
      if (v.kind == Membership::In) CHECK(truth);
    }
  }
}

TEST_CASE("codes shrink onto a point") {
  const TreeRef t = unit_thirds();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const Code c = Code::periodic(t, oracle::random_code(rng, 4), oracle::random_code(rng, 3) + "1");
    Interval prev = point_bounds(c, 0);
    for (std::size_t k = 1; k <= 12; ++k) {
      const Interval box = point_bounds(c, k);
      CHECK(prev.lo <= box.lo);
      CHECK(box.hi <= prev.hi);
      CHECK(box.width() < t->e(k));
      prev = box;
    }
  }
}

TEST_CASE("flip witness") {
  const TreeRef t = unit_thirds();
  const FlipWitness w = flip_witness(Code::all_zeros(t, "0"), 1);
  CHECK(w.flipped.bits(2) == "01");
  CHECK(w.y_box == Interval{Rat(2, 9), Rat(1, 3)});
  CHECK(w.distinct_certified);
  CHECK(w.distance_certified);
  const FlipWitness back = flip_witness(w.flipped, 1);
  CHECK(same_sequence(back.flipped, Code::all_zeros(t, "0")));
}

TEST_CASE("open-cover avoidance") {
  const Interval host{Rat(0), Rat(1)};
  const std::vector<OpenInterval> cover{{Rat(1, 10), Rat(1, 5)}, {Rat(1, 2), Rat(3, 5)}};
  const TreeRef t = avoid_open_cover_tree(cover, host, 5);
  CHECK(validate_tree(*t, 5).clean());
  for (const auto& [p, iv] : t->nodes_up_to(5))
    for (const auto& u : cover) CHECK((iv.hi <= u.lo || u.hi <= iv.lo));
  CHECK(validate_tree(*avoid_open_cover_tree({}, host, 4), 4).clean());
  try {
    avoid_open_cover_tree({{Rat(0), Rat(1)}}, host, 3);
    FAIL("accepted a full cover");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::CoverTooLarge);
  }
  const auto piece = largest_uncovered(host, cover);
  REQUIRE(piece);
  CHECK(*piece == Interval{Rat(3, 5), Rat(1)});
}
