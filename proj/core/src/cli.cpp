#include "slotentropy/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "slotentropy/cql.hpp"
#include "slotentropy/errors.hpp"
#include "slotentropy/pipeline.hpp"
#include "slotentropy/synth.hpp"

namespace slotentropy::cli {

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> corpus;
  std::vector<std::string> participles;
  std::optional<int> sample_n;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> min_raw;
  std::optional<std::size_t> min_parsed;
  std::optional<std::size_t> max_raw;
  std::optional<std::size_t> auto_candidates;
  std::optional<std::string> alpha_key;
  std::optional<std::string> out_dir;
  std::optional<int> jobs;
  std::optional<int> n_perm;
  bool rr_allow_adverb = false;
  bool hyphen_noun_lexicon = false;
  bool no_dedup = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "JSON config file");
  cmd->add_option("--corpus", flags->corpus, "CoNLL-U corpus file (repeatable)");
  cmd->add_option("--participles", flags->participles,
                  "explicit participle lemmas (omit for auto discovery)");
  cmd->add_option("--sample-n", flags->sample_n, "tokens sampled per cell");
  cmd->add_option("--seed", flags->seed, "master seed");
  cmd->add_option("--min-raw", flags->min_raw, "raw-token inclusion threshold");
  cmd->add_option("--min-parsed", flags->min_parsed, "parsed-token inclusion threshold");
  cmd->add_option("--max-raw", flags->max_raw, "raw span cap per cell");
  cmd->add_option("--auto-candidates", flags->auto_candidates,
                  "candidate cap for auto discovery");
  cmd->add_option("--alpha-key", flags->alpha_key, "alpha key: lemma or form")
      ->check(CLI::IsMember({"lemma", "form"}));
  cmd->add_option("--out-dir", flags->out_dir, "output directory");
  cmd->add_option("--jobs", flags->jobs, "worker threads for extraction");
  cmd->add_option("--n-perm", flags->n_perm, "permutation replicates");
  cmd->add_flag("--rr-allow-adverb", flags->rr_allow_adverb,
                "allow an optional adverb in the reduced-relative query");
  cmd->add_flag("--hyphen-noun-lexicon", flags->hyphen_noun_lexicon,
                "require hyphenated alphas to be corpus-attested nominal lemmas");
  cmd->add_flag("--no-dedup", flags->no_dedup, "disable exact-duplicate filtering");
}

pipeline::Config resolve_config(const CommonFlags& flags) {
  pipeline::Config config;
  if (!flags.config_path.empty()) config = pipeline::load_config(flags.config_path);
  if (const char* env = std::getenv("SLOTENTROPY_SEED")) {
    config.seed = std::strtoull(env, nullptr, 10);
  }
  if (!flags.corpus.empty()) {
    config.corpus_paths.clear();
    for (const std::string& p : flags.corpus) config.corpus_paths.push_back(p);
  }
  if (!flags.participles.empty()) config.participles = flags.participles;
  if (flags.sample_n) config.sample_n = *flags.sample_n;
  if (flags.seed) config.seed = *flags.seed;
  if (flags.min_raw) config.min_raw = *flags.min_raw;
  if (flags.min_parsed) config.min_parsed = *flags.min_parsed;
  if (flags.max_raw) config.max_raw = *flags.max_raw;
  if (flags.auto_candidates) config.auto_candidates = *flags.auto_candidates;
  if (flags.alpha_key) {
    config.normalization.alpha_key =
        *flags.alpha_key == "form" ? entropy::AlphaKey::Form : entropy::AlphaKey::Lemma;
  }
  if (flags.out_dir) config.out_dir = *flags.out_dir;
  if (flags.jobs) config.jobs = *flags.jobs;
  if (flags.n_perm) config.n_perm = *flags.n_perm;
  if (flags.rr_allow_adverb) config.extractor.rr_allow_adverb = true;
  if (flags.hyphen_noun_lexicon) config.use_hyphen_noun_lexicon = true;
  if (flags.no_dedup) config.dedup = false;
  return config;
}

void print_ast(const cql::QueryAst& ast) {
  for (std::size_t i = 0; i < ast.sequence.size(); ++i) {
    const cql::TokenPattern& p = ast.sequence[i];
    std::cout << "pattern " << (i + 1) << (p.optional ? " (optional):" : ":");
    if (p.tests.empty()) std::cout << " (any token)";
    for (const cql::AttributeTest& t : p.tests) {
      const char* attr = t.attribute == cql::Attribute::Tag     ? "tag"
                         : t.attribute == cql::Attribute::Lemma ? "lemma"
                                                                : "word";
      std::cout << ' ' << attr << (t.op == cql::TestOp::EqRegex ? "=" : "!=") << '"' << t.pattern
                << '"';
    }
    std::cout << '\n';
  }
  std::cout << "scope: sentence\n";
  std::cout << "canonical: " << cql::render(ast) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"slot-entropy analysis of participial constructions", "slotentropy"};
  app.require_subcommand(1);

  CommonFlags flags;
  CLI::App* extract_cmd = app.add_subcommand("extract", "ingest the corpus and emit matches.tsv");
  add_common_flags(extract_cmd, &flags);
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "apply inclusion + downsampling, emit entropy.csv");
  add_common_flags(entropy_cmd, &flags);
  CLI::App* stats_cmd = app.add_subcommand("stats", "fit the mixed model, emit stats.json");
  add_common_flags(stats_cmd, &flags);
  CLI::App* report_cmd =
      app.add_subcommand("report", "run the full pipeline and emit the report bundle");
  add_common_flags(report_cmd, &flags);

  std::string spec_path, corpus_out = "synth.conllu", sidecar_out = "synth_truth.tsv";
  CLI::App* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic corpus");
  synth_cmd->add_option("--spec", spec_path, "synthesis spec (JSON)")->required();
  synth_cmd->add_option("--corpus-out", corpus_out, "output CoNLL-U path");
  synth_cmd->add_option("--sidecar-out", sidecar_out, "planted-truth TSV path");

  CLI::App* cql_cmd = app.add_subcommand("cql", "query-language utilities");
  std::string query_text;
  CLI::App* check_cmd = cql_cmd->add_subcommand("check", "parse a query and print its AST");
  check_cmd->add_option("query", query_text, "CQL query text")->required();
  cql_cmd->require_subcommand(1);

  // CLI11's vector overload expects the arguments reversed
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*check_cmd) {
      try {
        print_ast(cql::parse_query(query_text));
      } catch (const cql::ParseError& e) {
        std::cerr << "parse error at " << e.what() << '\n';
        return 1;
      }
      return 0;
    }
    if (*synth_cmd) {
      synth::SynthSpec spec = synth::load_spec(spec_path);
      synth::generate_files(spec, corpus_out, sidecar_out);
      std::cout << "wrote " << corpus_out << " and " << sidecar_out << '\n';
      return 0;
    }
    pipeline::Config config = resolve_config(flags);
    if (*extract_cmd) {
      pipeline::cmd_extract(config);
    } else if (*entropy_cmd) {
      pipeline::cmd_entropy(config);
    } else if (*stats_cmd) {
      pipeline::cmd_stats(config);
    } else if (*report_cmd) {
      pipeline::run_pipeline(config);
    }
    return 0;
  } catch (const EmptyAnalysisError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace slotentropy::cli
