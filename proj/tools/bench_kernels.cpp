// Serial vs OpenMP timings for the checking kernels.
//
// usage: bench_kernels [--depth N] [--replays N] [--reps N]

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <random>

#include "cantor/extraction.hpp"
#include "cantor/kernels.hpp"
#include "cantor/strategies.hpp"

using namespace cantor;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, double serial, double parallel, bool same) {
  std::cout << name << "  serial " << serial * 1e3 << " ms  parallel " << parallel * 1e3 << " ms  speedup "
            << serial / parallel << (same ? "" : "  OUTPUT MISMATCH") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"checking-kernel benchmark"};
  std::size_t depth = 11, replays = 2000;
  int reps = 3;
  app.add_option("--depth", depth, "middle-thirds level for the disjointness kernel")->capture_default_str();
  app.add_option("--replays", replays, "codes replayed against an extraction")->capture_default_str();
  app.add_option("--reps", reps, "repetitions (best time reported)")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::cout << "threads: " << kernels::max_threads() << '\n';

  const TreeRef t = CantorTree::middle_thirds(Rat(0), Rat(1));
  std::vector<Interval> level;
  for (const auto& p : paths_at_depth(depth)) level.push_back(t->expand(p));
  // One deliberate overlap so both versions have something to report.
  level.push_back(level[level.size() / 2]);
  std::vector<kernels::IndexPair> a, b;
  const double s1 = best_of(reps, [&] { a = kernels::overlapping_pairs_serial(level); });
  const double p1 = best_of(reps, [&] { b = kernels::overlapping_pairs_parallel(level); });
  row("overlapping_pairs (" + std::to_string(level.size()) + " intervals)", s1, p1, a == b);

  const ExtractedTree x = extract(squeeze_B(), GameConfig::unit(), 6);
  std::mt19937_64 rng(1);
  std::vector<Path> codes;
  for (std::size_t i = 0; i < replays; ++i) {
    Path c;
    for (int k = 0; k < 6; ++k) c.push_back((rng() & 1U) ? '1' : '0');
    codes.push_back(std::move(c));
  }
  std::vector<std::size_t> fa, fb;
  const double s2 = best_of(reps, [&] { fa = replay_failures(x, codes, Exec::Serial); });
  const double p2 = best_of(reps, [&] { fb = replay_failures(x, codes, Exec::Parallel); });
  row("replay_failures (" + std::to_string(replays) + " codes, squeeze_B)", s2, p2, fa == fb);
  return a == b && fa == fb ? 0 : 1;
}
