#include "cantor/kernels.hpp"

#include <algorithm>
#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cantor::kernels {

namespace {

// Exceptions must not escape an OpenMP region; a throwing check counts as
// a failure in both variants.
bool guarded(const std::function<bool(std::size_t)>& check, std::size_t i) {
  try {
    return check(i);
  } catch (...) {
    return false;
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<IndexPair> overlapping_pairs_serial(std::span<const Interval> xs) {
  std::vector<IndexPair> out;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (!disjoint(xs[i], xs[j])) out.emplace_back(i, j);
  return out;
}

std::vector<IndexPair> overlapping_pairs_parallel(std::span<const Interval> xs) {
  const auto n = static_cast<std::int64_t>(xs.size());
  std::vector<std::vector<IndexPair>> per_row(xs.size());
  // Rows shrink with i; dynamic scheduling evens out the triangle.
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    auto& row = per_row[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < n; ++j)
      if (!disjoint(xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)]))
        row.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  std::vector<IndexPair> out;
  for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::vector<std::size_t> failing_indices_serial(std::size_t n,
                                                const std::function<bool(std::size_t)>& check) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!guarded(check, i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> failing_indices_parallel(std::size_t n,
                                                  const std::function<bool(std::size_t)>& check) {
  std::vector<char> ok(n, 1);
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i)
    ok[static_cast<std::size_t>(i)] = guarded(check, static_cast<std::size_t>(i)) ? 1 : 0;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (!ok[i]) out.push_back(i);
  return out;
}

}  // namespace cantor::kernels
