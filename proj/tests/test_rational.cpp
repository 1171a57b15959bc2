#include <doctest.h>

#include <numeric>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/rational.hpp"

using cantor::Rat;

TEST_CASE("normalization and wire form") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(0).str() == "0/1");
  CHECK(Rat(5).str() == "5/1");
  CHECK(Rat::parse("-7/3") == Rat(-7, 3));
  CHECK(Rat::parse(Rat(123456789, 1000).str()) == Rat(123456789, 1000));
}

TEST_CASE("strict parsing") {
  for (const char* bad : {"2/4", "0.5", "1", "1/0", "-0/1", "0/2", "01/2", "1/-2", "+1/2", "1 /2", "", "/", "1/", "a/b",
                          "1/2/3", "1/02"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rat::parse(bad), cantor::CantorError);
    try {
      Rat::parse(bad);
    } catch (const cantor::CantorError& e) {
      CHECK(e.code() == cantor::Errc::ParseError);
    }
  }
  CHECK(Rat::parse("0/1").is_zero());
}

TEST_CASE("big values stay exact") {
  Rat x = cantor::inv_pow2(200);
  Rat y = x * cantor::pow2(200);
  CHECK(y == Rat(1));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK(Rat(1, 3) - Rat(1, 3) == Rat(0));
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
}

TEST_CASE("arithmetic agrees with 64-bit fractions") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 2000; ++i) {
    const long a = num(rng), b = den(rng), c = num(rng), d = den(rng);
    const Rat x(a, b), y(c, d);
    // (a/b + c/d) = (ad + cb) / bd, reduced independently.
    long n = a * d + c * b, m = b * d;
    long g = std::gcd(n, m);
    CHECK(x + y == Rat(n / g, m / g));
    n = a * c, m = b * d, g = std::gcd(n, m);
    CHECK(x * y == Rat(n / g, m / g));
    CHECK((x < y) == (a * d < c * b));
    CHECK(Rat::parse((x - y).str()) == x - y);
  }
}

TEST_CASE("midpoint and mediant lie strictly between") {
  const Rat a(1, 3), b(1, 2);
  CHECK(cantor::midpoint(a, b) == Rat(5, 12));
  CHECK(cantor::mediant(a, b) == Rat(2, 5));
  CHECK(cantor::rat_cmp(a, b) == cantor::Ordering::Less);
  CHECK(cantor::rat_cmp(b, b) == cantor::Ordering::Equal);
}
