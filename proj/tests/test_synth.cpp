#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "slotentropy/conllu.hpp"
#include "slotentropy/entropy.hpp"
#include "slotentropy/errors.hpp"
#include "slotentropy/synth.hpp"

using namespace slotentropy;
using extract::Construction;

namespace {

synth::SynthSpec small_spec(std::uint64_t seed, int tokens = 40) {
  synth::SynthSpec spec;
  spec.seed = seed;
  spec.n_participles = 2;
  spec.decoys_per_participle = 5;
  spec.zipf_jitter = 0.0;
  spec.cells[Construction::Hyphenated] = {tokens, 2.0, 50};
  spec.cells[Construction::Nvn] = {tokens, 2.0, 50};
  spec.cells[Construction::Passive] = {tokens, 0.0, 50};
  spec.cells[Construction::ReducedRelative] = {tokens, 0.0, 50};
  return spec;
}

std::string corpus_text(const synth::GeneratedCorpus& corpus) {
  std::ostringstream out;
  for (const Sentence& s : corpus.sentences) out << conllu::to_conllu(s) << "\n";
  return out.str();
}

}  // namespace

TEST_CASE("generated corpus is valid CoNLL-U and survives reparsing") {
  auto corpus = synth::generate(small_spec(3));
  for (const Sentence& s : corpus.sentences) {
    CHECK(conllu::validate(s) == std::nullopt);
  }
  std::istringstream in(corpus_text(corpus));
  auto reparsed = conllu::parse_all(in, "synth");
  CHECK(reparsed.size() == corpus.sentences.size());
  // no two sentences share a form sequence, so exact dedup is a no-op
  auto deduped = conllu::filter_exact_duplicates(reparsed);
  CHECK(deduped.size() == reparsed.size());
}

TEST_CASE("extractors recover the planted matches exactly") {
  auto spec = small_spec(11);
  auto corpus = synth::generate(spec);
  auto got = testutil::match_keys(testutil::run_extractors(corpus.sentences, corpus.participles));
  auto want = testutil::match_keys(corpus.truth);
  CHECK(got == want);
  CHECK(corpus.truth.size() ==
        static_cast<std::size_t>(2 * 4 * 40));  // participles x cells x tokens
}

TEST_CASE("fixed seed reproduces the corpus byte for byte") {
  auto a = corpus_text(synth::generate(small_spec(99)));
  auto b = corpus_text(synth::generate(small_spec(99)));
  CHECK(a == b);
  auto c = corpus_text(synth::generate(small_spec(100)));
  CHECK(a != c);
}

TEST_CASE("zipf cells measure lower entropy than uniform cells in >= 99/100 seeds") {
  int zipf_lower = 0;
  const int seeds = 100;
  for (int seed = 0; seed < seeds; ++seed) {
    synth::SynthSpec spec;
    spec.seed = 1000 + static_cast<std::uint64_t>(seed);
    spec.n_participles = 1;
    spec.decoys_per_participle = 0;
    spec.cells[Construction::Hyphenated] = {100, 2.0, 100};  // skewed
    spec.cells[Construction::Passive] = {100, 0.0, 100};     // uniform
    auto corpus = synth::generate(spec);
    auto matches = testutil::run_extractors(corpus.sentences, corpus.participles);
    auto cells = entropy::collect(matches);
    const auto& participle = corpus.participles[0];
    auto zipf = entropy::downsample(cells.at({participle, Construction::Hyphenated}), 100,
                                    entropy::cell_seed(spec.seed, participle, Construction::Hyphenated));
    auto uniform = entropy::downsample(cells.at({participle, Construction::Passive}), 100,
                                       entropy::cell_seed(spec.seed, participle, Construction::Passive));
    if (entropy::entropy_bits(zipf) < entropy::entropy_bits(uniform)) ++zipf_lower;
  }
  CHECK(zipf_lower >= 99);
}

TEST_CASE("sparse participles pad raw counts with rejected spans") {
  synth::SynthSpec spec = small_spec(5, 30);
  spec.decoys_per_participle = 0;  // keep the hyphen raw count exactly 10 + 25
  synth::SparseParticiple sparse;
  sparse.lemma = "negotiate";
  sparse.cells[Construction::Hyphenated] = {10, 1.0, 20};
  sparse.pad_rejects[Construction::Hyphenated] = 25;
  spec.sparse.push_back(sparse);

  auto corpus = synth::generate(spec);
  REQUIRE(corpus.participles.size() == 3);
  CHECK(corpus.participles[2] == "negotiate");

  // hyphenated raw spans for negotiate: 10 valid + 25 padded rejects
  std::map<std::string, std::set<std::string>> attested;
  for (const auto& s : corpus.sentences) {
    for (const auto& t : s.tokens) {
      if (tags::effective_tag(t) == "VVN") attested[t.lemma].insert(tags::to_lower(t.form));
    }
  }
  std::size_t raw = 0, valid = 0;
  for (const auto& s : corpus.sentences) {
    auto outcome = extract::scan_hyphenated(s, "negotiate", attested["negotiate"]);
    raw += outcome.raw();
    valid += outcome.matches.size();
  }
  CHECK(raw == 35);
  CHECK(valid == 10);
}

TEST_CASE("spec files load with defaults and reject unknown constructions") {
  auto dir = std::filesystem::temp_directory_path();
  auto path = dir / "slotentropy_synthspec_test.json";
  {
    std::ofstream out(path);
    out << R"({"seed": 5, "n_participles": 3,
               "cells": {"hyphenated": {"tokens": 120, "zipf": 2.0, "vocab": 60},
                          "nvn": {"tokens": 120, "zipf": 2.0, "vocab": 60},
                          "passive": {"tokens": 120},
                          "reduced_relative": {"tokens": 120}}})";
  }
  auto spec = synth::load_spec(path);
  CHECK(spec.seed == 5);
  CHECK(spec.n_participles == 3);
  CHECK(spec.cells.at(Construction::Passive).vocab == 100);
  CHECK(spec.cells.at(Construction::Hyphenated).zipf == 2.0);
  {
    std::ofstream out(path);
    out << R"({"seed": 5, "cells": {"sideways": {"tokens": 10}}})";
  }
  CHECK_THROWS_AS(synth::load_spec(path), ConfigError);
  std::filesystem::remove(path);
}
