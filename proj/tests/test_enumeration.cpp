#include <doctest.h>

#include <random>
#include <set>

#include "cantor/enumeration.hpp"
#include "cantor/errors.hpp"
#include "oracles.hpp"

using cantor::Rat;
using cantor::RatEnumeration;

TEST_CASE("first values of the unit enumeration") {
  const RatEnumeration q = RatEnumeration::unit();
  const char* expected[] = {"0/1", "1/1", "1/2", "1/3", "2/3", "1/4", "2/5", "3/5", "3/4", "1/5"};
  for (std::uint64_t k = 0; k < 10; ++k) CHECK(q.at(k).str() == expected[k]);
}

TEST_CASE("enumeration agrees with a breadth-first mediant walk") {
  const auto ref = oracle::stern_brocot_bfs(5000);
  const RatEnumeration q = RatEnumeration::unit();
  for (std::uint64_t k = 0; k < ref.size(); ++k) {
    CAPTURE(k);
    const Rat v = oracle::to_rat(ref[k]);
    REQUIRE(q.at(k) == v);
    REQUIRE(q.index_of(v) == cantor::BigInt(static_cast<unsigned long>(k)));
  }
}

TEST_CASE("affine image on other intervals") {
  const RatEnumeration q(Rat(-2), Rat(6));
  CHECK(q.at(std::uint64_t{0}) == Rat(-2));
  CHECK(q.at(std::uint64_t{1}) == Rat(6));
  CHECK(q.at(std::uint64_t{2}) == Rat(2));
  CHECK(q.index_of(Rat(2)) == 2);
  CHECK_THROWS_AS(RatEnumeration(Rat(1), Rat(1)), cantor::CantorError);
}

TEST_CASE("first_in matches a linear scan") {
  const auto ref = oracle::stern_brocot_bfs(1 << 14);
  const RatEnumeration q = RatEnumeration::unit();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> den(2, 60);
  int checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const long d1 = den(rng), d2 = den(rng);
    const Rat x(static_cast<long>(rng() % static_cast<std::uint64_t>(d1)), d1);
    const Rat y(static_cast<long>(rng() % static_cast<std::uint64_t>(d2 + 1)), d2);
    if (!(x < y)) continue;
    const auto k = oracle::first_in_scan(ref, x, y);
    if (k < 0) continue;  // beyond the scanned prefix
    const auto got = q.first_in(x, y);
    CAPTURE(x);
    CAPTURE(y);
    CHECK(got.index == cantor::BigInt(static_cast<long>(k)));
    CHECK(got.value == oracle::to_rat(ref[static_cast<std::size_t>(k)]));
    ++checked;
  }
  CHECK(checked > 1000);
}

TEST_CASE("first_in on deep and degenerate intervals") {
  const RatEnumeration q = RatEnumeration::unit();
  CHECK_THROWS_AS(q.first_in(Rat(1, 2), Rat(1, 2)), cantor::CantorError);
  // Tiny interval near 1/3: the answer is the shallowest node inside.
  const Rat x = Rat(1, 3) + cantor::inv_pow2(20);
  const Rat y = Rat(1, 3) + cantor::inv_pow2(19);
  const auto got = q.first_in(x, y);
  CHECK(x < got.value);
  CHECK(got.value < y);
  CHECK(q.at(got.index) == got.value);
  CHECK(q.index_of(got.value) == got.index);
  // A cap below the answer's index is refused.
  try {
    q.first_in(x, y, cantor::BigInt(1000));
    FAIL("expected CapExceeded");
  } catch (const cantor::CantorError& e) {
    CHECK(e.code() == cantor::Errc::CapExceeded);
  }
  // Far deeper, the index no longer fits in memory and is refused.
  try {
    q.first_in(Rat(1, 3) + cantor::inv_pow2(60), Rat(1, 3) + cantor::inv_pow2(59));
    FAIL("expected CapExceeded");
  } catch (const cantor::CantorError& e) {
    CHECK(e.code() == cantor::Errc::CapExceeded);
  }
  // Endpoint values themselves are never returned.
  CHECK(q.first_in(Rat(0), Rat(1)).value == Rat(1, 2));
  CHECK_THROWS_AS(q.first_in(Rat(-1), Rat(2)), cantor::CantorError);
}

TEST_CASE("prefix has no repeats and covers small denominators") {
  const RatEnumeration q = RatEnumeration::unit();
  std::set<Rat> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) CHECK(seen.insert(q.at(k)).second);
  for (const auto& f : oracle::farey(8)) CHECK(seen.count(oracle::to_rat(f)) == 1);
}
