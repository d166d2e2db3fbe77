#include <benchmark/benchmark.h>

#include <sstream>

#include "slotentropy/conllu.hpp"
#include "slotentropy/synth.hpp"

using namespace slotentropy;

namespace {

std::string bench_text() {
  synth::SynthSpec spec;
  spec.seed = 9;
  spec.n_participles = 4;
  spec.cells[extract::Construction::Passive] = {300, 0.0, 100};
  spec.cells[extract::Construction::Hyphenated] = {300, 2.0, 100};
  std::ostringstream out;
  for (const Sentence& s : synth::generate(spec).sentences) {
    out << conllu::to_conllu(s) << "\n";
  }
  return out.str();
}

void BM_parse_conllu(benchmark::State& state) {
  const std::string text = bench_text();
  std::size_t sentences = 0;
  for (auto _ : state) {
    std::istringstream in(text);
    conllu::Reader reader(in, "bench");
    while (auto s = reader.next()) ++sentences;
  }
  benchmark::DoNotOptimize(sentences);
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_parse_conllu);

}  // namespace
