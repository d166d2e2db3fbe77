#include <benchmark/benchmark.h>

#include "slotentropy/cql.hpp"
#include "slotentropy/rng.hpp"
#include "slotentropy/synth.hpp"

using namespace slotentropy;

namespace {

std::vector<Sentence> bench_corpus() {
  synth::SynthSpec spec;
  spec.seed = 8;
  spec.n_participles = 2;
  spec.decoys_per_participle = 4;
  spec.cells[extract::Construction::Passive] = {200, 0.0, 100};
  spec.cells[extract::Construction::ReducedRelative] = {200, 0.0, 100};
  spec.cells[extract::Construction::Nvn] = {200, 2.0, 100};
  spec.cells[extract::Construction::Hyphenated] = {200, 2.0, 100};
  return synth::generate(spec).sentences;
}

void BM_scan_passive_query(benchmark::State& state) {
  const auto corpus = bench_corpus();
  cql::CompiledQuery query(cql::parse_query(
      R"([tag="VB.*"] [tag="RB"]? [tag="VVN" & lemma="stain"] [tag="IN"] within <s/>)"));
  std::size_t hits = 0;
  for (auto _ : state) {
    for (const Sentence& s : corpus) {
      hits += query.scan(s).size();
    }
  }
  benchmark::DoNotOptimize(hits);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(corpus.size()));
}
BENCHMARK(BM_scan_passive_query);

void BM_parse_query(benchmark::State& state) {
  const std::string text =
      R"([tag="N.*" & tag!="NNSZ" & tag!="NNZ" & tag!="NPZ" & tag!="NPSZ"] [tag="VVN" & lemma="stain"] [tag="IN"] within <s/>)";
  for (auto _ : state) {
    benchmark::DoNotOptimize(cql::parse_query(text));
  }
}
BENCHMARK(BM_parse_query);

}  // namespace
