#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "helpers.hpp"
#include "slotentropy/cli.hpp"
#include "slotentropy/pipeline.hpp"
#include "slotentropy/synth.hpp"

using namespace slotentropy;
using extract::Construction;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("slotentropy_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

synth::SynthSpec pipeline_spec(std::uint64_t seed) {
  synth::SynthSpec spec;
  spec.seed = seed;
  spec.n_participles = 5;
  spec.decoys_per_participle = 6;
  spec.zipf_jitter = 0.1;
  spec.cells[Construction::Hyphenated] = {60, 2.0, 80};
  spec.cells[Construction::Nvn] = {60, 2.0, 80};
  spec.cells[Construction::Passive] = {60, 0.0, 80};
  spec.cells[Construction::ReducedRelative] = {60, 0.0, 80};
  synth::SparseParticiple sparse;
  sparse.lemma = "negotiate";
  sparse.cells[Construction::Hyphenated] = {20, 1.0, 30};
  sparse.pad_rejects[Construction::Hyphenated] = 50;
  spec.sparse.push_back(sparse);
  return spec;
}

pipeline::Config pipeline_config(const fs::path& corpus, const fs::path& out) {
  pipeline::Config config;
  config.corpus_paths = {corpus};
  config.seed = 424242;
  config.sample_n = 40;
  config.min_raw = 50;
  config.min_parsed = 40;
  config.auto_candidates = 65;
  config.n_perm = 300;
  config.out_dir = out;
  return config;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("full pipeline over a synthetic corpus") {
  TempDir dir("pipeline");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(77), corpus, dir.path / "truth.tsv");
  pipeline::Config config = pipeline_config(corpus, dir.path / "out");

  pipeline::RunReport report = pipeline::run_pipeline(config);

  SUBCASE("the sparse participle is excluded for parsed tokens, not raw") {
    bool found = false;
    for (const auto& e : report.excluded) {
      if (e.participle == "negotiate") {
        found = true;
        CHECK(e.reason == "insufficient parsed tokens");
      }
    }
    CHECK(found);
    // 20 valid + 50 padded rejects + 1 hyphen decoy = 71 raw >= 50; 20 parsed < 40
    const auto& cell = report.extraction.cells.at({"negotiate", Construction::Hyphenated});
    CHECK(cell.raw == 71);
    CHECK(cell.parsed_valid == 20);
  }

  SUBCASE("included participles have 4 records each at the common n") {
    CHECK(report.included.size() == 5);
    CHECK(report.records.size() == 20);
    for (const auto& r : report.records) CHECK(r.n == 40);
  }

  SUBCASE("manifest accounting: raw = valid + filter + dependency for every cell") {
    for (const auto& [cell, stats] : report.extraction.cells) {
      CHECK(stats.raw ==
            stats.parsed_valid + stats.rejected_filter + stats.rejected_dependency);
    }
    // decoys guarantee non-trivial rejection counts
    std::size_t filter_total = 0, dep_total = 0;
    for (const auto& [cell, stats] : report.extraction.cells) {
      filter_total += stats.rejected_filter;
      dep_total += stats.rejected_dependency;
    }
    CHECK(filter_total > 0);
    CHECK(dep_total > 0);
  }

  SUBCASE("artifacts exist and figure CSVs have included x 4 rows") {
    for (const char* name : {"matches.tsv", "entropy.csv", "stats.json", "fig1.csv", "fig2.csv",
                             "fig1.svg", "fig2.svg", "run_manifest.json"}) {
      CHECK(fs::exists(dir.path / "out" / name));
    }
    std::istringstream fig1(slurp(dir.path / "out" / "fig1.csv"));
    std::string line;
    int rows = -1;  // header
    while (std::getline(fig1, line)) {
      if (!line.empty()) ++rows;
    }
    CHECK(rows == 20);
  }

  SUBCASE("direction and statistics mirror the design of the corpus") {
    std::map<std::string, std::map<Construction, double>> by_participle;
    for (const auto& r : report.records) by_participle[r.participle][r.kind] = r.entropy_bits;
    for (const auto& [participle, cells] : by_participle) {
      const double compound =
          (cells.at(Construction::Hyphenated) + cells.at(Construction::Nvn)) / 2.0;
      const double phrasal =
          (cells.at(Construction::Passive) + cells.at(Construction::ReducedRelative)) / 2.0;
      CHECK(compound < phrasal);
    }
    CHECK(report.stats.lrt_construction.df == 3);
    CHECK(report.stats.lrt_construction.p < 1e-3);
    REQUIRE(report.stats.lrt_phrasal_only.has_value());
    CHECK(report.stats.lrt_phrasal_only->p > 0.05);
    REQUIRE(report.stats.permutation.has_value());
    CHECK(report.stats.permutation->p > 0.05);
  }

  SUBCASE("manifest lists the exclusion under the parsed-token reason") {
    nlohmann::json manifest;
    std::ifstream in(dir.path / "out" / "run_manifest.json");
    in >> manifest;
    bool listed = false;
    for (const auto& e : manifest["stages"]["inclusion"]["excluded"]) {
      if (e["participle"] == "negotiate") {
        listed = true;
        CHECK(e["reason"] == "insufficient parsed tokens");
      }
    }
    CHECK(listed);
    CHECK(manifest["seed"] == 424242);
  }
}

TEST_CASE("same seed twice gives byte-identical artifacts; jobs do not change them") {
  TempDir dir("determinism");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(31), corpus, dir.path / "truth.tsv");

  pipeline::Config a = pipeline_config(corpus, dir.path / "out_a");
  pipeline::Config b = pipeline_config(corpus, dir.path / "out_b");
  pipeline::Config c = pipeline_config(corpus, dir.path / "out_c");
  c.jobs = 4;
  pipeline::run_pipeline(a);
  pipeline::run_pipeline(b);
  pipeline::run_pipeline(c);
  for (const char* name : {"matches.tsv", "entropy.csv", "stats.json", "fig1.csv", "fig2.csv"}) {
    CHECK(slurp(dir.path / "out_a" / name) == slurp(dir.path / "out_b" / name));
    CHECK(slurp(dir.path / "out_a" / name) == slurp(dir.path / "out_c" / name));
  }
}

TEST_CASE("empty analysis set raises and the CLI exit codes hold") {
  TempDir dir("exitcodes");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(7), corpus, dir.path / "truth.tsv");

  SUBCASE("run_pipeline throws EmptyAnalysisError") {
    pipeline::Config config = pipeline_config(corpus, dir.path / "out");
    config.min_parsed = 100000;
    CHECK_THROWS_AS(pipeline::run_pipeline(config), EmptyAnalysisError);
  }
  SUBCASE("cli: success = 0") {
    const int code = cli::run({"report", "--corpus", corpus.string(), "--seed", "5",
                               "--sample-n", "40", "--min-raw", "50", "--min-parsed", "40",
                               "--n-perm", "50", "--out-dir", (dir.path / "ok").string()});
    CHECK(code == 0);
  }
  SUBCASE("cli: config error = 1 (missing seed)") {
    const int code = cli::run({"report", "--corpus", corpus.string(), "--out-dir",
                               (dir.path / "noseed").string()});
    CHECK(code == 1);
  }
  SUBCASE("cli: empty analysis set = 2") {
    const int code = cli::run({"report", "--corpus", corpus.string(), "--seed", "5",
                               "--sample-n", "40", "--min-parsed", "100000", "--out-dir",
                               (dir.path / "empty").string()});
    CHECK(code == 2);
  }
  SUBCASE("cli: missing corpus file = 1") {
    const int code = cli::run({"report", "--corpus", (dir.path / "nope.conllu").string(),
                               "--seed", "5", "--out-dir", (dir.path / "x").string()});
    CHECK(code == 1);
  }
}

TEST_CASE("stage verbs compose: extract -> entropy -> stats") {
  TempDir dir("stages");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(13), corpus, dir.path / "truth.tsv");
  const fs::path out = dir.path / "out";

  pipeline::Config config = pipeline_config(corpus, out);
  pipeline::cmd_extract(config);
  CHECK(fs::exists(out / "matches.tsv"));
  CHECK(fs::exists(out / "extract_manifest.json"));
  pipeline::cmd_entropy(config);
  CHECK(fs::exists(out / "entropy.csv"));
  pipeline::cmd_stats(config);
  CHECK(fs::exists(out / "stats.json"));

  // staged entropy.csv equals the full-pipeline one
  pipeline::Config full = pipeline_config(corpus, dir.path / "full");
  pipeline::run_pipeline(full);
  CHECK(slurp(out / "entropy.csv") == slurp(dir.path / "full" / "entropy.csv"));
  CHECK(slurp(out / "stats.json") == slurp(dir.path / "full" / "stats.json"));
}

TEST_CASE("config file loading with CLI-style overrides") {
  TempDir dir("config");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(3), corpus, dir.path / "truth.tsv");
  const fs::path config_path = dir.path / "config.json";
  {
    std::ofstream out(config_path);
    out << nlohmann::json{{"corpus", {corpus.string()}},
                          {"seed", 9},
                          {"sample_n", 40},
                          {"min_raw", 50},
                          {"min_parsed", 40},
                          {"n_perm", 40},
                          {"alpha_key", "form"},
                          {"deprel_phrasal_alpha", {"obl", "nmod", "obl:agent"}},
                          {"out_dir", (dir.path / "out").string()}}
               .dump();
  }
  pipeline::Config config = pipeline::load_config(config_path);
  CHECK(config.seed == 9);
  CHECK(config.sample_n == 40);
  CHECK(config.normalization.alpha_key == entropy::AlphaKey::Form);
  CHECK(config.corpus_paths.size() == 1);

  const int code = cli::run({"report", "--config", config_path.string()});
  CHECK(code == 0);
  CHECK(fs::exists(dir.path / "out" / "entropy.csv"));

  SUBCASE("the environment seed is visible in the manifest") {
    // cli reads SLOTENTROPY_SEED between config and flags
    ::setenv("SLOTENTROPY_SEED", "777", 1);
    const int rc = cli::run({"report", "--config", config_path.string(), "--out-dir",
                             (dir.path / "env").string()});
    ::unsetenv("SLOTENTROPY_SEED");
    CHECK(rc == 0);
    nlohmann::json manifest;
    std::ifstream in(dir.path / "env" / "run_manifest.json");
    in >> manifest;
    CHECK(manifest["seed"] == 777);
  }
}

TEST_CASE("auto discovery ranks VVN lemmas by hyphenated raw frequency") {
  TempDir dir("discovery");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::SynthSpec spec = pipeline_spec(21);
  synth::generate_files(spec, corpus, dir.path / "truth.tsv");

  pipeline::Config config = pipeline_config(corpus, dir.path / "out");
  config.auto_candidates = 3;
  pipeline::ExtractionResult extraction = pipeline::run_extraction(config);
  CHECK(extraction.auto_discovery);
  CHECK(extraction.candidates.size() == 3);
  // main participles have ~62 hyphen tokens each, negotiate has 70
  CHECK(std::find(extraction.candidates.begin(), extraction.candidates.end(), "negotiate") !=
        extraction.candidates.end());

  SUBCASE("explicit lists bypass discovery") {
    pipeline::Config explicit_config = pipeline_config(corpus, dir.path / "out2");
    explicit_config.participles = {"stain", "cover"};
    pipeline::ExtractionResult explicit_extraction =
        pipeline::run_extraction(explicit_config);
    CHECK_FALSE(explicit_extraction.auto_discovery);
    CHECK(explicit_extraction.candidates == std::vector<std::string>{"stain", "cover"});
  }
}

TEST_CASE("the hyphen noun lexicon can only shrink hyphenated matches") {
  TempDir dir("lexicon");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::generate_files(pipeline_spec(61), corpus, dir.path / "truth.tsv");

  pipeline::Config off = pipeline_config(corpus, dir.path / "off");
  pipeline::Config on = pipeline_config(corpus, dir.path / "on");
  on.use_hyphen_noun_lexicon = true;
  pipeline::ExtractionResult base = pipeline::run_extraction(off);
  pipeline::ExtractionResult filtered = pipeline::run_extraction(on);
  for (const auto& [cell, stats] : filtered.cells) {
    if (cell.second != Construction::Hyphenated) continue;
    const auto& base_stats = base.cells.at(cell);
    CHECK(stats.parsed_valid <= base_stats.parsed_valid);
    CHECK(stats.raw == base_stats.raw);  // lexicon is a filter, not a query change
  }
}

TEST_CASE("raw cap truncates pulls in corpus order") {
  TempDir dir("cap");
  const fs::path corpus = dir.path / "corpus.conllu";
  synth::SynthSpec spec = pipeline_spec(55);
  synth::generate_files(spec, corpus, dir.path / "truth.tsv");

  pipeline::Config config = pipeline_config(corpus, dir.path / "out");
  config.max_raw = 25;
  pipeline::ExtractionResult extraction = pipeline::run_extraction(config);
  for (const auto& [cell, stats] : extraction.cells) {
    CHECK(stats.raw <= 25);
    CHECK(stats.raw == stats.parsed_valid + stats.rejected_filter + stats.rejected_dependency);
  }
}
