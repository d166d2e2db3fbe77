#include "slotentropy/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>

#include <nlohmann/json.hpp>

#include "slotentropy/conllu.hpp"
#include "slotentropy/errors.hpp"
#include "slotentropy/rng.hpp"
#include "slotentropy/tags.hpp"

namespace slotentropy::pipeline {

namespace {

using extract::Construction;
using extract::Match;
using nlohmann::json;

// entropy.csv carries 6 decimals; downstream stages fit on exactly the
// published values so the staged verbs and the full pipeline agree byte for
// byte
double csv_precision(double h) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", h);
  return std::stod(buf);
}

template <class SetT>
json set_to_json(const SetT& s) {
  json arr = json::array();
  for (const auto& v : s) arr.push_back(v);
  return arr;
}

json config_to_json(const Config& config) {
  json j;
  json corpus = json::array();
  for (const auto& p : config.corpus_paths) corpus.push_back(p.string());
  j["corpus"] = corpus;
  j["participles"] = config.participles.empty() ? json("auto") : json(config.participles);
  j["auto_candidates"] = config.auto_candidates;
  j["sample_n"] = config.sample_n;
  j["seed"] = config.seed ? json(*config.seed) : json(nullptr);
  j["min_raw"] = config.min_raw;
  j["min_parsed"] = config.min_parsed;
  j["max_raw"] = config.max_raw;
  j["alpha_key"] =
      config.normalization.alpha_key == entropy::AlphaKey::Lemma ? "lemma" : "form";
  j["dedup"] = config.dedup;
  j["rr_allow_adverb"] = config.extractor.rr_allow_adverb;
  j["hyphen_noun_lexicon"] = config.use_hyphen_noun_lexicon;
  j["deprel_compound"] = set_to_json(config.extractor.deprels.compound_modifier);
  j["deprel_adjectival"] = set_to_json(config.extractor.deprels.adjectival);
  j["deprel_phrasal_alpha"] = set_to_json(config.extractor.deprels.phrasal_alpha);
  j["deprel_case"] = set_to_json(config.extractor.deprels.case_marker);
  j["deprel_prep"] = set_to_json(config.extractor.deprels.prep_link);
  j["deprel_pobj"] = set_to_json(config.extractor.deprels.prep_object);
  j["possessive_tags"] = set_to_json(config.extractor.possessive_tags);
  j["out_dir"] = config.out_dir.string();
  j["jobs"] = config.jobs;
  j["n_perm"] = config.n_perm;
  return j;
}

void read_string_set(const json& j, const char* key, std::set<std::string, std::less<>>* out) {
  if (!j.contains(key)) return;
  out->clear();
  for (const auto& v : j.at(key)) out->insert(v.get<std::string>());
}

// First-pass corpus facts: attested participle forms, hyphen tail counts,
// optional nominal-lemma lexicon.
struct CorpusSurvey {
  std::map<std::string, std::set<std::string>> vvn_forms;  // lemma -> lowercased forms
  std::map<std::string, std::size_t> tail_counts;          // lowercased hyphen tails
  std::set<std::string> noun_lexicon;                      // lowercased nominal lemmas
  std::size_t sentences_read = 0;
  std::size_t sentences_kept = 0;
  std::size_t malformed_skipped = 0;
};

template <class Fn>
void for_each_sentence(const Config& config, std::size_t* read, std::size_t* kept,
                       std::size_t* skipped, Fn&& fn) {
  conllu::DuplicateFilter dedup;
  for (const std::filesystem::path& path : config.corpus_paths) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open corpus file " + path.string());
    conllu::Reader reader(in, path.filename().string(), {.skip_malformed = true});
    while (auto sentence = reader.next()) {
      ++*read;
      if (config.dedup && !dedup.keep(*sentence)) continue;
      ++*kept;
      fn(*sentence);
    }
    *skipped += reader.diagnostics().size();
  }
}

CorpusSurvey survey_corpus(const Config& config) {
  CorpusSurvey survey;
  for_each_sentence(config, &survey.sentences_read, &survey.sentences_kept,
                    &survey.malformed_skipped, [&](const Sentence& s) {
    for (const Token& t : s.tokens) {
      const std::string tag = tags::effective_tag(t);
      if (tag == "VVN" && !t.lemma.empty()) {
        survey.vvn_forms[t.lemma].insert(tags::to_lower(t.form));
      }
      if (config.use_hyphen_noun_lexicon && tags::is_nominal(tag)) {
        survey.noun_lexicon.insert(tags::to_lower(t.lemma));
      }
      const std::size_t hyphen = t.form.rfind('-');
      if (hyphen != std::string::npos && hyphen != 0 && hyphen + 1 != t.form.size()) {
        ++survey.tail_counts[tags::to_lower(t.form.substr(hyphen + 1))];
      }
    }
  });
  return survey;
}

std::vector<std::string> discover_candidates(const CorpusSurvey& survey, std::size_t cap) {
  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (const auto& [lemma, forms] : survey.vvn_forms) {
    std::size_t count = 0;
    for (const std::string& form : forms) {
      auto it = survey.tail_counts.find(form);
      if (it != survey.tail_counts.end()) count += it->second;
    }
    ranked.emplace_back(lemma, count);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  for (const auto& [lemma, count] : ranked) {
    if (out.size() >= cap) break;
    out.push_back(lemma);
  }
  return out;
}

struct CellOutcome {
  std::string participle;
  Construction kind;
  extract::Outcome outcome;
};

struct ExtractionContext {
  std::vector<std::string> candidates;
  std::set<std::string> candidate_set;
  std::map<std::string, extract::LemmaQueries> queries;
  std::map<std::string, std::set<std::string>> attested;
  std::map<std::string, std::vector<std::string>> tail_to_lemmas;
  extract::Config extractor;
};

std::vector<CellOutcome> process_sentence(const Sentence& s, const ExtractionContext& ctx) {
  std::vector<CellOutcome> out;
  std::set<std::string> present;
  std::set<std::string> hyph_present;
  for (const Token& t : s.tokens) {
    if (ctx.candidate_set.count(t.lemma)) present.insert(t.lemma);
    const std::size_t hyphen = t.form.rfind('-');
    if (hyphen != std::string::npos && hyphen != 0 && hyphen + 1 != t.form.size()) {
      auto it = ctx.tail_to_lemmas.find(tags::to_lower(t.form.substr(hyphen + 1)));
      if (it != ctx.tail_to_lemmas.end()) {
        for (const std::string& lemma : it->second) hyph_present.insert(lemma);
      }
    }
  }
  for (const std::string& lemma : present) {
    const extract::LemmaQueries& q = ctx.queries.at(lemma);
    extract::Outcome passive = extract::scan_passive(s, q, ctx.extractor);
    if (passive.raw()) out.push_back({lemma, Construction::Passive, std::move(passive)});
    extract::Outcome rr = extract::scan_reduced_relative(s, q, ctx.extractor);
    if (rr.raw()) out.push_back({lemma, Construction::ReducedRelative, std::move(rr)});
    extract::Outcome nvn = extract::scan_nvn(s, q, ctx.extractor);
    if (nvn.raw()) out.push_back({lemma, Construction::Nvn, std::move(nvn)});
  }
  for (const std::string& lemma : hyph_present) {
    extract::Outcome hyph =
        extract::scan_hyphenated(s, lemma, ctx.attested.at(lemma), ctx.extractor);
    if (hyph.raw()) out.push_back({lemma, Construction::Hyphenated, std::move(hyph)});
  }
  return out;
}

}  // namespace

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }

  Config config;
  if (j.contains("corpus")) {
    if (j.at("corpus").is_string()) {
      config.corpus_paths.push_back(j.at("corpus").get<std::string>());
    } else {
      for (const auto& p : j.at("corpus")) config.corpus_paths.push_back(p.get<std::string>());
    }
  }
  if (j.contains("participles") && !j.at("participles").is_string()) {
    for (const auto& p : j.at("participles")) config.participles.push_back(p.get<std::string>());
  }
  config.auto_candidates = j.value("auto_candidates", config.auto_candidates);
  config.sample_n = j.value("sample_n", config.sample_n);
  if (j.contains("seed") && !j.at("seed").is_null()) {
    config.seed = j.at("seed").get<std::uint64_t>();
  }
  config.min_raw = j.value("min_raw", config.min_raw);
  config.min_parsed = j.value("min_parsed", config.min_parsed);
  config.max_raw = j.value("max_raw", config.max_raw);
  if (j.contains("alpha_key")) {
    const std::string key = j.at("alpha_key").get<std::string>();
    if (key == "lemma") {
      config.normalization.alpha_key = entropy::AlphaKey::Lemma;
    } else if (key == "form") {
      config.normalization.alpha_key = entropy::AlphaKey::Form;
    } else {
      throw ConfigError("alpha_key must be 'lemma' or 'form'");
    }
  }
  config.dedup = j.value("dedup", config.dedup);
  config.extractor.rr_allow_adverb = j.value("rr_allow_adverb", false);
  config.use_hyphen_noun_lexicon = j.value("hyphen_noun_lexicon", false);
  read_string_set(j, "deprel_compound", &config.extractor.deprels.compound_modifier);
  read_string_set(j, "deprel_adjectival", &config.extractor.deprels.adjectival);
  read_string_set(j, "deprel_phrasal_alpha", &config.extractor.deprels.phrasal_alpha);
  read_string_set(j, "deprel_case", &config.extractor.deprels.case_marker);
  read_string_set(j, "deprel_prep", &config.extractor.deprels.prep_link);
  read_string_set(j, "deprel_pobj", &config.extractor.deprels.prep_object);
  if (j.contains("possessive_tags")) {
    config.extractor.possessive_tags.clear();
    for (const auto& v : j.at("possessive_tags")) {
      config.extractor.possessive_tags.insert(v.get<std::string>());
    }
  }
  if (j.contains("out_dir")) config.out_dir = j.at("out_dir").get<std::string>();
  config.jobs = j.value("jobs", config.jobs);
  config.n_perm = j.value("n_perm", config.n_perm);
  return config;
}

void validate(const Config& config) {
  if (config.corpus_paths.empty()) throw ConfigError("no corpus files configured");
  for (const auto& path : config.corpus_paths) {
    if (!std::filesystem::exists(path)) {
      throw ConfigError("corpus file does not exist: " + path.string());
    }
  }
  if (!config.seed) {
    throw ConfigError("seed is required (set 'seed' in the config or SLOTENTROPY_SEED)");
  }
  if (config.sample_n < 2) throw ConfigError("sample_n must be >= 2");
  if (config.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (config.max_raw < 1) throw ConfigError("max_raw must be >= 1");
}

ExtractionResult run_extraction(const Config& config) {
  validate(config);
  CorpusSurvey survey = survey_corpus(config);

  ExtractionContext ctx;
  ctx.extractor = config.extractor;
  if (config.use_hyphen_noun_lexicon) {
    ctx.extractor.hyphen_noun_lexicon = survey.noun_lexicon;
  }

  ExtractionResult result;
  result.sentences_read = survey.sentences_read;
  result.sentences_kept = survey.sentences_kept;
  result.duplicates_dropped = survey.sentences_read - survey.sentences_kept;
  result.malformed_skipped = survey.malformed_skipped;
  result.auto_discovery = config.participles.empty();

  if (result.auto_discovery) {
    ctx.candidates = discover_candidates(survey, config.auto_candidates);
  } else {
    for (const std::string& lemma : config.participles) {
      if (!ctx.candidate_set.count(lemma)) ctx.candidates.push_back(lemma);
      ctx.candidate_set.insert(lemma);
    }
    ctx.candidate_set.clear();
  }
  for (const std::string& lemma : ctx.candidates) ctx.candidate_set.insert(lemma);
  result.candidates = ctx.candidates;

  for (const std::string& lemma : ctx.candidates) {
    ctx.queries.emplace(lemma, extract::make_queries(lemma, ctx.extractor));
    auto it = survey.vvn_forms.find(lemma);
    std::set<std::string> forms = it == survey.vvn_forms.end() ? std::set<std::string>{}
                                                               : it->second;
    for (const std::string& form : forms) ctx.tail_to_lemmas[form].push_back(lemma);
    ctx.attested.emplace(lemma, std::move(forms));
    // seed all four cells so the manifest covers them even at zero
    for (Construction kind : extract::kAllConstructions) {
      result.cells[{lemma, kind}];
    }
  }

  auto merge = [&](const std::vector<CellOutcome>& outcomes) {
    for (const CellOutcome& cell : outcomes) {
      CellStats& stats = result.cells[{cell.participle, cell.kind}];
      std::size_t match_index = 0;
      for (extract::SpanOutcome span : cell.outcome.spans) {
        const bool counted = stats.raw < config.max_raw;
        if (counted) ++stats.raw;
        switch (span) {
          case extract::SpanOutcome::Valid:
            if (counted) {
              ++stats.parsed_valid;
              result.matches.push_back(cell.outcome.matches[match_index]);
            }
            ++match_index;
            break;
          case extract::SpanOutcome::RejectedFilter:
            if (counted) ++stats.rejected_filter;
            break;
          case extract::SpanOutcome::RejectedDependency:
            if (counted) ++stats.rejected_dependency;
            break;
        }
      }
    }
  };

  std::size_t read2 = 0, kept2 = 0, skipped2 = 0;
  if (config.jobs <= 1) {
    for_each_sentence(config, &read2, &kept2, &skipped2,
                      [&](const Sentence& s) { merge(process_sentence(s, ctx)); });
  } else {
    std::vector<Sentence> batch;
    constexpr std::size_t kBatch = 512;
    auto flush = [&]() {
      if (batch.empty()) return;
      const std::size_t jobs = static_cast<std::size_t>(config.jobs);
      const std::size_t chunk = (batch.size() + jobs - 1) / jobs;
      std::vector<std::future<std::vector<std::vector<CellOutcome>>>> futures;
      for (std::size_t start = 0; start < batch.size(); start += chunk) {
        const std::size_t end = std::min(batch.size(), start + chunk);
        futures.push_back(std::async(std::launch::async, [&, start, end]() {
          std::vector<std::vector<CellOutcome>> chunk_out;
          chunk_out.reserve(end - start);
          for (std::size_t i = start; i < end; ++i) {
            chunk_out.push_back(process_sentence(batch[i], ctx));
          }
          return chunk_out;
        }));
      }
      for (auto& future : futures) {
        for (const auto& outcomes : future.get()) merge(outcomes);
      }
      batch.clear();
    };
    for_each_sentence(config, &read2, &kept2, &skipped2, [&](const Sentence& s) {
      batch.push_back(s);
      if (batch.size() >= kBatch) flush();
    });
    flush();
  }
  return result;
}

namespace {

struct InclusionOutcome {
  std::vector<std::string> included;
  std::vector<ExclusionReason> excluded;
  std::map<entropy::CellKey, std::size_t> raw_counts;
  std::map<entropy::CellKey, std::size_t> parsed_counts;
};

InclusionOutcome decide_inclusion(const ExtractionResult& extraction, const Config& config) {
  InclusionOutcome outcome;
  for (const auto& [cell, stats] : extraction.cells) {
    outcome.raw_counts[cell] = stats.raw;
    outcome.parsed_counts[cell] = stats.parsed_valid;
  }
  const std::set<std::string> included_set = entropy::apply_inclusion(
      outcome.raw_counts, outcome.parsed_counts, config.min_raw, config.min_parsed);
  for (const std::string& participle : extraction.candidates) {
    if (included_set.count(participle)) {
      outcome.included.push_back(participle);
      continue;
    }
    bool raw_deficient = false;
    for (Construction kind : extract::kAllConstructions) {
      entropy::CellKey cell{participle, kind};
      auto raw_it = outcome.raw_counts.find(cell);
      const std::size_t raw = raw_it == outcome.raw_counts.end() ? 0 : raw_it->second;
      if (raw < config.min_raw) raw_deficient = true;
    }
    outcome.excluded.push_back(
        {participle, raw_deficient ? "insufficient raw tokens" : "insufficient parsed tokens"});
  }
  std::sort(outcome.included.begin(), outcome.included.end());
  return outcome;
}

json cells_to_json(const std::map<entropy::CellKey, CellStats>& cells) {
  json arr = json::array();
  for (const auto& [cell, stats] : cells) {
    arr.push_back(json{{"participle", cell.first},
                       {"construction", extract::name(cell.second)},
                       {"raw", stats.raw},
                       {"rejected_filter", stats.rejected_filter},
                       {"rejected_dependency", stats.rejected_dependency},
                       {"parsed_valid", stats.parsed_valid}});
  }
  return arr;
}

void check_accounting(const std::map<entropy::CellKey, CellStats>& cells) {
  for (const auto& [cell, stats] : cells) {
    require_invariant(
        stats.raw == stats.parsed_valid + stats.rejected_filter + stats.rejected_dependency,
        "cell accounting broken for (" + cell.first + ", " +
            std::string(extract::name(cell.second)) + ")");
  }
}

json excluded_to_json(const std::vector<ExclusionReason>& excluded) {
  json arr = json::array();
  for (const ExclusionReason& e : excluded) {
    arr.push_back(json{{"participle", e.participle}, {"reason", e.reason}});
  }
  return arr;
}

}  // namespace

RunReport run_pipeline(const Config& config) {
  validate(config);
  std::filesystem::create_directories(config.out_dir);

  RunReport report;
  report.extraction = run_extraction(config);
  check_accounting(report.extraction.cells);
  extract::write_matches_tsv(config.out_dir / "matches.tsv", report.extraction.matches);

  InclusionOutcome inclusion = decide_inclusion(report.extraction, config);
  report.included = inclusion.included;
  report.excluded = inclusion.excluded;

  const std::uint64_t seed = *config.seed;

  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["seed"] = seed;
  json ingest;
  ingest["sentences_read"] = report.extraction.sentences_read;
  ingest["sentences_kept"] = report.extraction.sentences_kept;
  ingest["duplicates_dropped"] = report.extraction.duplicates_dropped;
  ingest["malformed_skipped"] = report.extraction.malformed_skipped;
  manifest["stages"]["ingest"] = ingest;
  manifest["stages"]["discovery"] = json{
      {"mode", report.extraction.auto_discovery ? "auto" : "explicit"},
      {"candidates", report.extraction.candidates}};
  manifest["stages"]["extraction"] = json{{"cells", cells_to_json(report.extraction.cells)}};

  auto write_manifest = [&]() {
    std::ofstream out(config.out_dir / "run_manifest.json");
    if (!out) throw ConfigError("cannot write run_manifest.json");
    out << manifest.dump(2) << '\n';
  };

  // group matches and sample the included participles
  std::map<entropy::CellKey, entropy::SlotSample> samples =
      entropy::collect(report.extraction.matches, config.normalization);

  std::vector<std::string> sampled_ok;
  std::vector<entropy::EntropyRecord> records;
  json sampling_cells = json::array();
  for (const std::string& participle : report.included) {
    std::vector<entropy::EntropyRecord> participle_records;
    bool ok = true;
    for (Construction kind : extract::kAllConstructions) {
      auto it = samples.find({participle, kind});
      if (it == samples.end()) {
        ok = false;
        break;
      }
      try {
        entropy::SlotSample sampled =
            entropy::downsample(it->second, config.sample_n, entropy::cell_seed(seed, participle, kind));
        participle_records.push_back(
            {participle, kind, config.sample_n, csv_precision(entropy::entropy_bits(sampled))});
      } catch (const entropy::InsufficientSampleError&) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      report.excluded.push_back({participle, "insufficient parsed tokens"});
      continue;
    }
    sampled_ok.push_back(participle);
    for (entropy::EntropyRecord& r : participle_records) {
      sampling_cells.push_back(json{{"participle", r.participle},
                                    {"construction", extract::name(r.kind)},
                                    {"sampled", r.n}});
      records.push_back(std::move(r));
    }
  }
  report.included = sampled_ok;
  report.records = records;

  manifest["stages"]["inclusion"] =
      json{{"included", report.included}, {"excluded", excluded_to_json(report.excluded)}};

  if (report.included.empty()) {
    write_manifest();
    throw EmptyAnalysisError("empty analysis set: no participle survives inclusion");
  }

  manifest["stages"]["sampling"] =
      json{{"sample_n", config.sample_n}, {"cells", sampling_cells}};

  entropy::write_entropy_csv(config.out_dir / "entropy.csv", records);

  std::vector<lmm::LongRow> rows = report::rows_from_records(records);
  report.stats =
      report::compute_stats(rows, config.n_perm, rng::derive_stream(seed, "permutation"));
  report::write_stats_json(config.out_dir / "stats.json", report.stats);

  std::vector<report::FigRow> fig1 = report::fig1_rows(records);
  std::vector<report::FigRow> fig2 = report::fig2_rows(records);
  report::write_fig_csv(config.out_dir / "fig1.csv", fig1, true);
  report::write_fig_csv(config.out_dir / "fig2.csv", fig2, false);
  report::write_fig1_svg(config.out_dir / "fig1.svg", fig1);
  report::write_fig2_svg(config.out_dir / "fig2.svg", fig2);

  write_manifest();
  return report;
}

void cmd_extract(const Config& config) {
  validate(config);
  std::filesystem::create_directories(config.out_dir);
  ExtractionResult extraction = run_extraction(config);
  check_accounting(extraction.cells);
  extract::write_matches_tsv(config.out_dir / "matches.tsv", extraction.matches);
  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["stages"]["ingest"] = json{{"sentences_read", extraction.sentences_read},
                                      {"sentences_kept", extraction.sentences_kept},
                                      {"duplicates_dropped", extraction.duplicates_dropped},
                                      {"malformed_skipped", extraction.malformed_skipped}};
  manifest["stages"]["discovery"] =
      json{{"mode", extraction.auto_discovery ? "auto" : "explicit"},
           {"candidates", extraction.candidates}};
  manifest["stages"]["extraction"] = json{{"cells", cells_to_json(extraction.cells)}};
  std::ofstream out(config.out_dir / "extract_manifest.json");
  if (!out) throw ConfigError("cannot write extract_manifest.json");
  out << manifest.dump(2) << '\n';
}

void cmd_entropy(const Config& config) {
  if (!config.seed) throw ConfigError("seed is required");
  const std::filesystem::path manifest_path = config.out_dir / "extract_manifest.json";
  std::ifstream manifest_in(manifest_path);
  if (!manifest_in) {
    throw ConfigError("missing " + manifest_path.string() + " (run 'slotentropy extract' first)");
  }
  json manifest;
  manifest_in >> manifest;

  std::map<entropy::CellKey, std::size_t> raw_counts;
  for (const auto& cell : manifest.at("stages").at("extraction").at("cells")) {
    auto kind = extract::construction_from_name(cell.at("construction").get<std::string>());
    if (!kind) continue;
    raw_counts[{cell.at("participle").get<std::string>(), *kind}] =
        cell.at("raw").get<std::size_t>();
  }

  std::vector<Match> matches = extract::read_matches_tsv(config.out_dir / "matches.tsv");
  std::map<entropy::CellKey, entropy::SlotSample> samples =
      entropy::collect(matches, config.normalization);
  std::map<entropy::CellKey, std::size_t> parsed_counts;
  for (const auto& [cell, sample] : samples) {
    parsed_counts[cell] = static_cast<std::size_t>(sample.total());
  }
  std::set<std::string> included = entropy::apply_inclusion(raw_counts, parsed_counts,
                                                            config.min_raw, config.min_parsed);

  std::vector<entropy::EntropyRecord> records;
  for (const std::string& participle : included) {
    std::vector<entropy::EntropyRecord> participle_records;
    bool ok = true;
    for (Construction kind : extract::kAllConstructions) {
      auto it = samples.find({participle, kind});
      if (it == samples.end()) {
        ok = false;
        break;
      }
      try {
        entropy::SlotSample sampled = entropy::downsample(
            it->second, config.sample_n, entropy::cell_seed(*config.seed, participle, kind));
        participle_records.push_back(
            {participle, kind, config.sample_n, csv_precision(entropy::entropy_bits(sampled))});
      } catch (const entropy::InsufficientSampleError&) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (entropy::EntropyRecord& r : participle_records) records.push_back(std::move(r));
  }
  if (records.empty()) {
    throw EmptyAnalysisError("empty analysis set: no participle survives inclusion");
  }
  entropy::write_entropy_csv(config.out_dir / "entropy.csv", records);
}

void cmd_stats(const Config& config) {
  if (!config.seed) throw ConfigError("seed is required");
  std::vector<entropy::EntropyRecord> records =
      entropy::read_entropy_csv(config.out_dir / "entropy.csv");
  if (records.empty()) throw EmptyAnalysisError("entropy.csv has no records");
  for (const entropy::EntropyRecord& r : records) {
    if (r.n != records.front().n) {
      throw ConfigError("entropy.csv records are not comparable: mixed sample sizes");
    }
  }
  std::vector<lmm::LongRow> rows = report::rows_from_records(records);
  report::StatsBundle stats = report::compute_stats(
      rows, config.n_perm, rng::derive_stream(*config.seed, "permutation"));
  report::write_stats_json(config.out_dir / "stats.json", stats);
}

}  // namespace slotentropy::pipeline
