#include <doctest.h>

#include <random>

#include "cantor/kernels.hpp"

using namespace cantor;

TEST_CASE("parallel kernels reproduce the serial reference") {
  std::mt19937_64 rng(5);
  std::vector<Interval> xs;
  for (int i = 0; i < 400; ++i) {
    const long lo = static_cast<long>(rng() % 10000);
    xs.push_back({Rat(lo, 10000), Rat(lo + 1 + static_cast<long>(rng() % 40), 10000)});
  }
  const auto s = kernels::overlapping_pairs_serial(xs);
  const auto p = kernels::overlapping_pairs_parallel(xs);
  CHECK_FALSE(s.empty());
  CHECK(s == p);
  for (const auto& [i, j] : s) CHECK(i < j);

  const auto check = [](std::size_t i) {
    if (i % 97 == 13) throw std::runtime_error("boom");
    return i % 7 != 0;
  };
  const auto fs = kernels::failing_indices_serial(1000, check);
  const auto fp = kernels::failing_indices_parallel(1000, check);
  CHECK(fs == fp);
  CHECK(std::is_sorted(fp.begin(), fp.end()));
  // Indices that throw count as failures.
  CHECK(std::find(fp.begin(), fp.end(), 13) != fp.end());
  CHECK(kernels::max_threads() >= 1);
}
