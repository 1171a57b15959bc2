#include <doctest.h>

#include "cantor/game.hpp"
#include "cantor/strategies.hpp"

using namespace cantor;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const CantorError& e) {
    return e.code();
  }
  FAIL("no error");
  return Errc::ParseError;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(code_of([] { GameConfig::make(Rat(1), Rat(1)); }) == Errc::InvalidConfig);
  CHECK(code_of([] { GameConfig::make(Rat(2), Rat(1)); }) == Errc::InvalidConfig);
}

TEST_CASE("move legality is strict and carries the bound") {
  History h(GameConfig::unit());
  CHECK(h.to_move() == Side::A);
  CHECK(code_of([&] { apply_move(h, Side::B, Rat(1, 2)); }) == Errc::WrongTurn);
  try {
    apply_move(h, Side::A, Rat(1));
    FAIL("accepted a1 = b0");
  } catch (const CantorError& e) {
    CHECK(e.code() == Errc::IllegalMove);
    REQUIRE(e.bound());
    CHECK(e.bound()->lo == Rat(0));
    CHECK(e.bound()->hi == Rat(1));
  }
  h = apply_move(h, Side::A, Rat(1, 2));
  CHECK(h.to_move() == Side::B);
  // b must exceed the pending a strictly.
  CHECK(code_of([&] { apply_move(h, Side::B, Rat(1, 2)); }) == Errc::IllegalMove);
  h = apply_move(h, Side::B, Rat(3, 4));
  CHECK(h.depth() == 1);
  const Bound b = h.legal_bounds();
  CHECK(b.lo == Rat(1, 2));
  CHECK(b.hi == Rat(3, 4));
  CHECK(code_of([&] { apply_move(h, Side::A, Rat(1, 2)); }) == Errc::IllegalMove);
}

TEST_CASE("from_parts re-validates the chain") {
  CHECK(code_of([] {
          History::from_parts(GameConfig::unit(), {{Rat(1, 2), Rat(3, 4)}, {Rat(1, 3), Rat(2, 3)}}, std::nullopt);
        }) == Errc::IllegalMove);
  const History ok = History::from_parts(GameConfig::unit(), {{Rat(1, 4), Rat(3, 4)}}, Rat(1, 2));
  CHECK(ok.flat_args().size() == 5);
  CHECK(ok.prefix(0).depth() == 0);
  CHECK(ok.prefix_with_pending(0).pending_a() == Rat(1, 4));
}

TEST_CASE("consistency checks find the first divergence") {
  const auto a = midpoint_A();
  const auto b = midpoint_B();
  History h = run(GameConfig::unit(), a, b, 5);
  CHECK(h.depth() == 5);
  CHECK(is_consistent(check_consistency(h, a, Side::A)));
  CHECK(is_consistent(check_consistency(h, b, Side::B)));
  // Tamper with round 3's b.
  auto rounds = h.rounds();
  rounds[2].b = midpoint(rounds[2].a, rounds[2].b);
  rounds.resize(3);
  const History t = History::from_parts(h.config(), rounds, std::nullopt);
  const auto v = check_consistency(t, b, Side::B);
  REQUIRE(std::holds_alternative<FirstDivergence>(v));
  CHECK(std::get<FirstDivergence>(v).round == 3);
  CHECK(std::get<FirstDivergence>(v).found == rounds[2].b);
  CHECK(is_consistent(check_consistency(t, a, Side::A)));
}

TEST_CASE("limit bracket") {
  CHECK(code_of([] { limit_bracket(History(GameConfig::unit())); }) == Errc::NoRounds);
  const History h = run(GameConfig::unit(), midpoint_A(), midpoint_B(), 2);
  const LimitBracket lb = limit_bracket(h);
  CHECK(lb.lo == h.rounds().back().a);
  CHECK(lb.hi == h.rounds().back().b);
  CHECK(lb.depth == 2);
  // midpoint vs midpoint: a1 = 1/2, b1 = 3/4, a2 = 5/8, b2 = 11/16.
  CHECK(lb.lo == Rat(5, 8));
  CHECK(lb.hi == Rat(11, 16));
}
