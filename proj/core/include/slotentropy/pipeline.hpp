#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "slotentropy/entropy.hpp"
#include "slotentropy/errors.hpp"
#include "slotentropy/extract.hpp"
#include "slotentropy/report.hpp"

namespace slotentropy::pipeline {

struct Config {
  std::vector<std::filesystem::path> corpus_paths;
  // explicit participle lemmas; empty means auto discovery (VVN lemmas ranked
  // by hyphenated-compound raw frequency, top auto_candidates taken)
  std::vector<std::string> participles;
  std::size_t auto_candidates = 65;
  int sample_n = 100;
  std::optional<std::uint64_t> seed;  // required; deliberately no wall-clock default
  std::size_t min_raw = 200;
  std::size_t min_parsed = 100;
  std::size_t max_raw = 5000;  // per-cell raw span cap, first hits in corpus order
  entropy::Normalization normalization;
  extract::Config extractor;
  bool dedup = true;
  bool use_hyphen_noun_lexicon = false;
  int jobs = 1;
  int n_perm = 10000;
  std::filesystem::path out_dir = "out";
};

Config load_config(const std::filesystem::path& path);
void validate(const Config& config);

struct CellStats {
  std::size_t raw = 0;
  std::size_t rejected_filter = 0;
  std::size_t rejected_dependency = 0;
  std::size_t parsed_valid = 0;
};

struct ExclusionReason {
  std::string participle;
  std::string reason;
};

struct ExtractionResult {
  std::vector<extract::Match> matches;  // capped, in corpus order
  std::map<entropy::CellKey, CellStats> cells;
  std::vector<std::string> candidates;
  std::map<std::string, std::set<std::string>> attested_forms;
  std::size_t sentences_read = 0;
  std::size_t sentences_kept = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t malformed_skipped = 0;
  bool auto_discovery = false;
};

ExtractionResult run_extraction(const Config& config);

struct RunReport {
  ExtractionResult extraction;
  std::vector<std::string> included;
  std::vector<ExclusionReason> excluded;
  std::vector<entropy::EntropyRecord> records;
  report::StatsBundle stats;
};

// Full pipeline: ingest -> query -> extract -> inclusion -> downsample ->
// entropy -> stats. Writes matches.tsv, entropy.csv, stats.json, fig1.csv,
// fig2.csv, fig1.svg, fig2.svg and run_manifest.json under out_dir.
RunReport run_pipeline(const Config& config);

// Stage verbs (each reads the previous stage's artifacts from out_dir).
void cmd_extract(const Config& config);
void cmd_entropy(const Config& config);
void cmd_stats(const Config& config);

}  // namespace slotentropy::pipeline
