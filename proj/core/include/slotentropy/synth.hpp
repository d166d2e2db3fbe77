#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "slotentropy/extract.hpp"
#include "slotentropy/token.hpp"

namespace slotentropy::synth {

// Target alpha distribution for one (participle, construction) cell:
// `tokens` planted matches drawn from a Zipf(zipf) distribution over a
// `vocab`-word inventory (zipf = 0 is uniform).
struct CellSpec {
  int tokens = 0;
  double zipf = 0.0;
  int vocab = 100;
};

// A participle planted with sub-threshold cells, for exclusion-path testing.
// Cells not overridden fall back to the main cell specs; pad_rejects adds
// that many filter-rejected raw spans to a construction.
struct SparseParticiple {
  std::string lemma;
  std::map<extract::Construction, CellSpec> cells;
  std::map<extract::Construction, int> pad_rejects;
};

struct SynthSpec {
  int n_participles = 2;
  std::map<extract::Construction, CellSpec> cells;
  // decoy sentences per participle, cycling through the reject templates
  // (relativizer passives, clause-attached prepositions, object-position
  // NVN, hyphen-before-verb)
  int decoys_per_participle = 4;
  // uniform jitter applied to each participle's Zipf exponent so cells vary
  // by participle (gives the random intercept something to absorb)
  double zipf_jitter = 0.0;
  std::uint64_t seed = 0;
  std::vector<SparseParticiple> sparse;
};

SynthSpec load_spec(const std::filesystem::path& path);

struct GeneratedCorpus {
  std::vector<Sentence> sentences;
  std::vector<extract::Match> truth;  // every intended match
  std::vector<std::string> participles;
};

GeneratedCorpus generate(const SynthSpec& spec);

// Writes the corpus as CoNLL-U plus the planted-truth sidecar in the
// matches.tsv format.
void generate_files(const SynthSpec& spec, const std::filesystem::path& corpus_path,
                    const std::filesystem::path& sidecar_path);

// Built-in participle inventory (lemma -> participle form), used in order.
const std::vector<std::pair<std::string, std::string>>& participle_inventory();

std::string alpha_word(int rank);  // rank >= 1

}  // namespace slotentropy::synth
