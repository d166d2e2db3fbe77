#include <benchmark/benchmark.h>

#include "slotentropy/entropy.hpp"
#include "slotentropy/rng.hpp"

using namespace slotentropy;

namespace {

entropy::SlotSample random_sample(std::uint64_t seed, int total) {
  rng::SplitMix64 gen(seed);
  entropy::SlotSample s;
  s.participle = "bench";
  s.kind = extract::Construction::Hyphenated;
  int remaining = total;
  int k = 0;
  while (remaining > 0) {
    int c = 1 + static_cast<int>(gen.bounded(static_cast<std::uint64_t>(remaining)));
    s.alphas["k" + std::to_string(k++)] = c;
    remaining -= c;
  }
  return s;
}

void BM_entropy_bits(benchmark::State& state) {
  const auto sample = random_sample(5, 1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy::entropy_bits(sample));
  }
}
BENCHMARK(BM_entropy_bits);

void BM_downsample_100(benchmark::State& state) {
  const auto sample = random_sample(6, 5000);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy::downsample(sample, 100, ++seed));
  }
}
BENCHMARK(BM_downsample_100);

}  // namespace
