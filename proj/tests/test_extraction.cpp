#include <doctest.h>

#include <random>

#include "cantor/extraction.hpp"
#include "cantor/strategies.hpp"
#include "oracles.hpp"

using namespace cantor;

namespace {

std::vector<StrategyOracle> a_oracles(const GameConfig& cfg) {
  return {midpoint_A(), seeded_random(Side::A, 1), seeded_random(Side::A, 42),
          tree_chaser_A(default_chaser_target(cfg))};
}

std::vector<StrategyOracle> b_oracles() {
  return {midpoint_B(), squeeze_B(), countable_killer_B(CountableEnum(RatEnumeration::unit())),
          seeded_random(Side::B, 7)};
}

}  // namespace

TEST_CASE("midpoint A extraction: first level by hand") {
  const ExtractedTree x = extract(midpoint_A(), GameConfig::unit(), 2);
  const CantorTree& t = *x.tree;
  // root [a1, b0] = [1/2, 1]; u = 3/4; d_1 = first in (1/2, 3/4) = 2/3.
  CHECK(t.root() == Interval{Rat(1, 2), Rat(1)});
  CHECK(t.expand("1") == Interval{Rat(7, 12), Rat(2, 3)});
  CHECK(t.expand("0") == Interval{Rat(15, 28), Rat(4, 7)});
  CHECK(x.enum_indices.at("1") == 4);
  CHECK(x.ledger.at("1").rounds() == std::vector<Round>{{Rat(1, 2), Rat(2, 3)}});
}

TEST_CASE("B extraction: first level by hand") {
  const ExtractedTree x = extract(midpoint_B(), GameConfig::unit(), 1);
  const CantorTree& t = *x.tree;
  // c_0 = first in (1/2, 1) = 2/3, d_0 = (2/3 + 1)/2; c_1 = first in (5/6, 1) = 6/7.
  CHECK(t.expand("0") == Interval{Rat(2, 3), Rat(5, 6)});
  CHECK(t.expand("1") == Interval{Rat(6, 7), Rat(13, 14)});
  CHECK(x.ledger.at("0").pending_a() == Rat(2, 3));
}

TEST_CASE("extractions validate and replay for every reference oracle") {
  const GameConfig cfg = GameConfig::unit();
  std::vector<StrategyOracle> all = a_oracles(cfg);
  for (auto& b : b_oracles()) all.push_back(b);
  std::mt19937_64 rng(99);
  for (const auto& s : all) {
    CAPTURE(s.descriptor());
    const ExtractedTree x = extract(s, cfg, 5);
    const TreeReport r = verify_extraction(x, Exec::Serial);
    CHECK(r.clean());
    CHECK(r.node_count == 62);
    // Same-depth nodes pairwise disjoint by brute force.
    for (std::size_t n = 1; n <= 5; ++n) {
      std::vector<Interval> level;
      for (const auto& p : paths_at_depth(n)) level.push_back(x.tree->expand(p));
      CHECK(oracle::pairwise_disjoint(level));
    }
    std::vector<Path> codes;
    for (int i = 0; i < 8; ++i) codes.push_back(oracle::random_code(rng, 5));
    CHECK(replay_failures(x, codes, Exec::Serial).empty());
    CHECK(replay_failures(x, codes, Exec::Parallel).empty());
  }
}

TEST_CASE("replayed plays follow the strategy") {
  const ExtractedTree x = extract(squeeze_B(), GameConfig::unit(), 4);
  const ReplayResult r = replay(x, "0110");
  CHECK(r.ok());
  CHECK(r.play.depth() == 4);
  CHECK(r.play.rounds()[3].a == x.tree->expand("0110").lo);
  CHECK(r.container == x.tree->expand("011"));
  try {
    replay(x, "01101");
    FAIL("replayed past the depth");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::DepthExceeded);
  }
}

TEST_CASE("tampering is caught") {
  ExtractedTree x = extract(midpoint_A(), GameConfig::unit(), 3);
  auto nodes = x.tree->nodes_up_to(3);
  nodes["10"].lo = midpoint(nodes["10"].lo, nodes["10"].hi);
  x.tree = CantorTree::materialized(x.tree->rule(), nodes, 3, false);
  const TreeReport r = verify_extraction(x, Exec::Serial);
  CHECK_FALSE(r.clean());
  bool ledger = false;
  for (const auto& v : r.violations) ledger |= v.clause == Clause::Ledger && v.path == "10";
  CHECK(ledger);

  ExtractedTree y = extract(midpoint_B(), GameConfig::unit(), 3);
  y.enum_indices["01"] += 1;
  CHECK_FALSE(verify_extraction(y, Exec::Serial).clean());
}

TEST_CASE("oracle contract violations name the inequality") {
  const StrategyOracle rogue{Side::B, "rogue_B", [](const History& h) { return h.last_b(); }};
  try {
    extract(rogue, GameConfig::unit(), 2);
    FAIL("rogue oracle accepted");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::OracleContractViolation);
    CHECK(std::string(e.what()).find("b_1 < b_0") != std::string::npos);
  }
  try {
    extract_from_A(midpoint_B(), GameConfig::unit(), 2, RatEnumeration::unit());
    FAIL("wrong side accepted");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::OracleContractViolation);
  }
}

TEST_CASE("depth six is deep enough to need big indices") {
  const ExtractedTree x = extract(squeeze_B(), GameConfig::unit(), 6);
  CHECK(verify_extraction(x).clean());
  BigInt biggest = 0;
  for (const auto& [p, k] : x.enum_indices) biggest = std::max(biggest, k);
  CHECK(biggest > BigInt("18446744073709551616"));  // past 2^64
}
