#include <benchmark/benchmark.h>

#include "slotentropy/lmm.hpp"
#include "slotentropy/rng.hpp"

using namespace slotentropy;

namespace {

std::vector<lmm::LongRow> simulated_rows(int n_groups) {
  static const char* levels[] = {"hyphenated", "nvn", "passive", "reduced_relative"};
  rng::SplitMix64 gen(77);
  std::vector<lmm::LongRow> rows;
  for (int g = 0; g < n_groups; ++g) {
    const double u = 0.4 * rng::normal(gen);
    int level = 0;
    for (const char* name : levels) {
      const double mu = 3.0 + 0.6 * level++ + u;
      rows.push_back({"p" + std::to_string(g), name, mu + 0.3 * rng::normal(gen)});
    }
  }
  return rows;
}

void BM_fit_lmm(benchmark::State& state) {
  const auto rows = simulated_rows(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(lmm::fit_lmm(rows, true));
  }
}
BENCHMARK(BM_fit_lmm)->Arg(12)->Arg(36)->Arg(108);

}  // namespace
