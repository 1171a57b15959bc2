#pragma once

// Data-parallel checking kernels. Each has an OpenMP version and a serial
// reference with identical output; the tests compare the two and
// tools/bench_kernels times them.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cantor/cantor_tree.hpp"

namespace cantor::kernels {

using IndexPair = std::pair<std::size_t, std::size_t>;

/// All pairs i < j whose closed intervals intersect, sorted.
std::vector<IndexPair> overlapping_pairs_serial(std::span<const Interval> xs);
std::vector<IndexPair> overlapping_pairs_parallel(std::span<const Interval> xs);

/// Evaluates check(i) for i in [0, n) and returns the indices where it
/// failed, sorted. check must be safe to call concurrently.
std::vector<std::size_t> failing_indices_serial(std::size_t n,
                                                const std::function<bool(std::size_t)>& check);
std::vector<std::size_t> failing_indices_parallel(std::size_t n,
                                                  const std::function<bool(std::size_t)>& check);

int max_threads();

}  // namespace cantor::kernels
