#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slotentropy/cql.hpp"
#include "slotentropy/tags.hpp"
#include "slotentropy/token.hpp"

namespace slotentropy::extract {

enum class Construction { Passive, ReducedRelative, Nvn, Hyphenated };

inline constexpr Construction kAllConstructions[] = {
    Construction::Passive, Construction::ReducedRelative, Construction::Nvn,
    Construction::Hyphenated};

std::string_view name(Construction c);
std::optional<Construction> construction_from_name(std::string_view n);

// One attested (participle, alpha, head noun, construction) tuple.
// alpha_index is absent for Hyphenated, where alpha is a substring of the
// compound token rather than a token of its own.
struct Match {
  Construction kind = Construction::Passive;
  std::string participle_lemma;
  std::string alpha_lemma;
  std::string alpha_form;
  std::optional<std::string> head_noun_lemma;
  std::optional<std::string> preposition;
  std::string sentence_id;
  int participle_index = 0;
  std::optional<int> alpha_index;

  bool operator==(const Match&) const = default;
};

// Dependency-label sets. The relationships are fixed; the labels realizing
// them vary by treebank convention, so both the UD style (alpha headed by the
// participle with the preposition as a case child) and the spaCy/Stanford
// style (preposition headed by participle, alpha headed by preposition) are
// accepted for the phrasal constructions.
struct DeprelSets {
  std::set<std::string, std::less<>> compound_modifier = {"compound", "nmod:npmod", "obl:npmod",
                                                          "dep"};
  std::set<std::string, std::less<>> adjectival = {"amod", "acl"};
  std::set<std::string, std::less<>> phrasal_alpha = {"obl", "nmod", "obl:agent"};
  std::set<std::string, std::less<>> case_marker = {"case"};
  std::set<std::string, std::less<>> prep_link = {"prep"};
  std::set<std::string, std::less<>> prep_object = {"pobj", "obj"};
};

struct Config {
  DeprelSets deprels;
  tags::TagSet possessive_tags = tags::default_possessive_tags();
  // The reduced-relative query omits the optional adverb slot, as the source
  // queries did; this flag restores it.
  bool rr_allow_adverb = false;
  // When set, hyphenated alphas must be attested as nominal lemmas elsewhere
  // in the corpus.
  std::optional<std::set<std::string>> hyphen_noun_lexicon;
};

struct DepCandidate {
  int participle_index = 0;
  int alpha_index = 0;
  std::optional<int> head_noun_index;
  std::optional<int> prep_index;
};

bool dependency_validate(const DepCandidate& candidate, const Sentence& s, Construction kind,
                         const DeprelSets& sets = {});

// Construction query texts, parameterized by participle lemma (escaped as a
// regex literal).
std::string passive_query_text(std::string_view participle, const Config& config = {});
std::string reduced_relative_query_text(std::string_view participle, const Config& config = {});
std::string nvn_query_text(std::string_view participle, const Config& config = {});

// Per-span outcome, in sentence order, for manifest accounting:
// raw = matched + rejected_filter + rejected_dependency.
enum class SpanOutcome { Valid, RejectedFilter, RejectedDependency };

struct Outcome {
  std::vector<Match> matches;
  std::vector<SpanOutcome> spans;  // one entry per raw span, in order
  std::size_t raw() const { return spans.size(); }
  std::size_t rejected_filter() const;
  std::size_t rejected_dependency() const;
};

// Precompiled per-lemma queries; reuse across sentences.
struct LemmaQueries {
  std::string participle;
  cql::CompiledQuery passive;
  cql::CompiledQuery reduced_relative;
  cql::CompiledQuery nvn;
  std::size_t passive_participle_pattern = 2;  // [VB.*] [RB]? [VVN] [IN]
  std::size_t rr_participle_pattern = 1;       // [N] ([RB]?) [VVN] [IN]
};

LemmaQueries make_queries(std::string_view participle, const Config& config = {});

Outcome scan_passive(const Sentence& s, const LemmaQueries& q, const Config& config = {});
Outcome scan_reduced_relative(const Sentence& s, const LemmaQueries& q, const Config& config = {});
Outcome scan_nvn(const Sentence& s, const LemmaQueries& q, const Config& config = {});
Outcome scan_hyphenated(const Sentence& s, std::string_view participle,
                        const std::set<std::string>& attested_participle_forms,
                        const Config& config = {});

// Convenience single-call forms of the four extraction operations.
std::vector<Match> extract_passive(const Sentence& s, std::string_view participle,
                                   const Config& config = {});
std::vector<Match> extract_reduced_relative(const Sentence& s, std::string_view participle,
                                            const Config& config = {});
std::vector<Match> extract_nvn(const Sentence& s, std::string_view participle,
                               const Config& config = {});
std::vector<Match> extract_hyphenated(const Sentence& s, std::string_view participle,
                                      const std::set<std::string>& attested_participle_forms,
                                      const Config& config = {});

// Tab-separated intermediate format; absent fields written as "_".
// Columns: kind participle_lemma alpha_form alpha_lemma head_noun_lemma
//          preposition sentence_id participle_index alpha_index
std::string to_tsv_line(const Match& m);
Match from_tsv_line(std::string_view line);
void write_matches_tsv(const std::filesystem::path& path, std::span<const Match> matches);
std::vector<Match> read_matches_tsv(const std::filesystem::path& path);

}  // namespace slotentropy::extract
