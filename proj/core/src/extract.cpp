#include "slotentropy/extract.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "slotentropy/errors.hpp"

namespace slotentropy::extract {

namespace {

std::string escape_regex_literal(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::string_view("\\^$.|?*+()[]{}").find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

// [tag="N.*" & tag!="NNZ" & ...] built from the configured possessive set;
// only N-initial tags can collide with N.* so the others are dropped.
std::string nonpossessive_noun_pattern(const Config& config) {
  std::string out = "[tag=\"N.*\"";
  for (const std::string& tag : config.possessive_tags) {
    if (!tag.empty() && tag.front() == 'N') out += " & tag!=\"" + tag + "\"";
  }
  out += "]";
  return out;
}

bool nominal(const Token& t, const Config& config) {
  return tags::is_nominal(tags::effective_tag(t), config.possessive_tags);
}

bool in_set(const std::set<std::string, std::less<>>& set, const std::string& label) {
  return set.find(label) != set.end();
}

// First nominal token right of the preposition that passes dependency
// validation for the given phrasal kind; 0 when none does.
int find_phrasal_alpha(const Sentence& s, int participle_index, int prep_index, Construction kind,
                       const Config& config) {
  for (int j = prep_index + 1; j <= s.size(); ++j) {
    const Token& t = s.tokens[static_cast<std::size_t>(j - 1)];
    if (!nominal(t, config)) continue;
    DepCandidate candidate{participle_index, j, std::nullopt, prep_index};
    if (dependency_validate(candidate, s, kind, config.deprels)) return j;
  }
  return 0;
}

Match make_phrasal_match(const Sentence& s, Construction kind, std::string_view participle,
                         int participle_index, int alpha_index, int prep_index,
                         std::optional<std::string> head_noun) {
  const Token& alpha = s.tokens[static_cast<std::size_t>(alpha_index - 1)];
  Match m;
  m.kind = kind;
  m.participle_lemma = std::string(participle);
  m.alpha_lemma = alpha.lemma;
  m.alpha_form = alpha.form;
  m.head_noun_lemma = std::move(head_noun);
  m.preposition = s.tokens[static_cast<std::size_t>(prep_index - 1)].form;
  m.sentence_id = s.id;
  m.participle_index = participle_index;
  m.alpha_index = alpha_index;
  return m;
}

std::string field_or_marker(const std::optional<std::string>& v) { return v ? *v : "_"; }

}  // namespace

std::string_view name(Construction c) {
  switch (c) {
    case Construction::Passive:
      return "passive";
    case Construction::ReducedRelative:
      return "reduced_relative";
    case Construction::Nvn:
      return "nvn";
    case Construction::Hyphenated:
      return "hyphenated";
  }
  return "passive";
}

std::optional<Construction> construction_from_name(std::string_view n) {
  for (Construction c : kAllConstructions) {
    if (name(c) == n) return c;
  }
  return std::nullopt;
}

std::size_t Outcome::rejected_filter() const {
  return static_cast<std::size_t>(
      std::count(spans.begin(), spans.end(), SpanOutcome::RejectedFilter));
}

std::size_t Outcome::rejected_dependency() const {
  return static_cast<std::size_t>(
      std::count(spans.begin(), spans.end(), SpanOutcome::RejectedDependency));
}

bool dependency_validate(const DepCandidate& candidate, const Sentence& s, Construction kind,
                         const DeprelSets& sets) {
  const Token* participle = s.token_at(candidate.participle_index);
  if (!participle) return false;
  switch (kind) {
    case Construction::Passive:
    case Construction::ReducedRelative: {
      const Token* alpha = s.token_at(candidate.alpha_index);
      if (!alpha || !candidate.prep_index) return false;
      const Token* prep = s.token_at(*candidate.prep_index);
      if (!prep) return false;
      const bool ud_style = alpha->head == participle->index &&
                            in_set(sets.phrasal_alpha, alpha->deprel) &&
                            prep->head == alpha->index && in_set(sets.case_marker, prep->deprel);
      const bool prep_style = prep->head == participle->index &&
                              in_set(sets.prep_link, prep->deprel) &&
                              alpha->head == prep->index && in_set(sets.prep_object, alpha->deprel);
      return ud_style || prep_style;
    }
    case Construction::Nvn: {
      const Token* alpha = s.token_at(candidate.alpha_index);
      if (!alpha || !candidate.head_noun_index) return false;
      const Token* head_noun = s.token_at(*candidate.head_noun_index);
      if (!head_noun) return false;
      return alpha->head == participle->index && in_set(sets.compound_modifier, alpha->deprel) &&
             participle->head == head_noun->index && in_set(sets.adjectival, participle->deprel);
    }
    case Construction::Hyphenated:
      return true;  // no token-level edges to check
  }
  return false;
}

std::string passive_query_text(std::string_view participle, const Config&) {
  return "[tag=\"VB.*\"] [tag=\"RB\"]? [tag=\"VVN\" & lemma=\"" +
         escape_regex_literal(participle) + "\"] [tag=\"IN\"] within <s/>";
}

std::string reduced_relative_query_text(std::string_view participle, const Config& config) {
  std::string out = nonpossessive_noun_pattern(config);
  if (config.rr_allow_adverb) out += " [tag=\"RB\"]?";
  out += " [tag=\"VVN\" & lemma=\"" + escape_regex_literal(participle) + "\"] [tag=\"IN\"]";
  out += " within <s/>";
  return out;
}

std::string nvn_query_text(std::string_view participle, const Config& config) {
  return nonpossessive_noun_pattern(config) + " [tag=\"VVN\" & lemma=\"" +
         escape_regex_literal(participle) + "\"] [tag=\"N.*\"] within <s/>";
}

LemmaQueries make_queries(std::string_view participle, const Config& config) {
  LemmaQueries q{std::string(participle),
                 cql::CompiledQuery(cql::parse_query(passive_query_text(participle, config))),
                 cql::CompiledQuery(
                     cql::parse_query(reduced_relative_query_text(participle, config))),
                 cql::CompiledQuery(cql::parse_query(nvn_query_text(participle, config)))};
  q.passive_participle_pattern = 2;
  q.rr_participle_pattern = config.rr_allow_adverb ? 2 : 1;
  return q;
}

Outcome scan_passive(const Sentence& s, const LemmaQueries& q, const Config& config) {
  Outcome out;
  for (const cql::MatchSpan& span : q.passive.scan(s)) {
    const int be_index = *span.token_for(0);
    const int participle_index = *span.token_for(q.passive_participle_pattern);
    const int prep_index = *span.token_for(q.passive_participle_pattern + 1);
    // relative-clause filter: reject when a relativizer immediately precedes
    // the be verb
    if (const Token* left = s.token_at(be_index - 1)) {
      const std::string lemma = tags::to_lower(left->lemma);
      if (lemma == "which" || lemma == "that") {
        out.spans.push_back(SpanOutcome::RejectedFilter);
        continue;
      }
    }
    const int alpha_index =
        find_phrasal_alpha(s, participle_index, prep_index, Construction::Passive, config);
    if (alpha_index == 0) {
      out.spans.push_back(SpanOutcome::RejectedDependency);
      continue;
    }
    std::optional<std::string> head_noun;
    if (const Token* left = s.token_at(be_index - 1); left && nominal(*left, config)) {
      head_noun = left->lemma;
    }
    out.matches.push_back(make_phrasal_match(s, Construction::Passive, q.participle,
                                             participle_index, alpha_index, prep_index,
                                             std::move(head_noun)));
    out.spans.push_back(SpanOutcome::Valid);
  }
  return out;
}

Outcome scan_reduced_relative(const Sentence& s, const LemmaQueries& q, const Config& config) {
  Outcome out;
  for (const cql::MatchSpan& span : q.reduced_relative.scan(s)) {
    const int head_noun_index = *span.token_for(0);
    const int participle_index = *span.token_for(q.rr_participle_pattern);
    const int prep_index = *span.token_for(q.rr_participle_pattern + 1);
    const int alpha_index =
        find_phrasal_alpha(s, participle_index, prep_index, Construction::ReducedRelative, config);
    if (alpha_index == 0) {
      out.spans.push_back(SpanOutcome::RejectedDependency);
      continue;
    }
    Match m = make_phrasal_match(s, Construction::ReducedRelative, q.participle, participle_index,
                                 alpha_index, prep_index,
                                 s.tokens[static_cast<std::size_t>(head_noun_index - 1)].lemma);
    out.matches.push_back(std::move(m));
    out.spans.push_back(SpanOutcome::Valid);
  }
  return out;
}

Outcome scan_nvn(const Sentence& s, const LemmaQueries& q, const Config& config) {
  Outcome out;
  for (const cql::MatchSpan& span : q.nvn.scan(s)) {
    const int alpha_index = *span.token_for(0);
    const int participle_index = *span.token_for(1);
    const int head_noun_index = *span.token_for(2);
    DepCandidate candidate{participle_index, alpha_index, head_noun_index, std::nullopt};
    if (!dependency_validate(candidate, s, Construction::Nvn, config.deprels)) {
      out.spans.push_back(SpanOutcome::RejectedDependency);
      continue;
    }
    const Token& alpha = s.tokens[static_cast<std::size_t>(alpha_index - 1)];
    Match m;
    m.kind = Construction::Nvn;
    m.participle_lemma = q.participle;
    m.alpha_lemma = alpha.lemma;
    m.alpha_form = alpha.form;
    m.head_noun_lemma = s.tokens[static_cast<std::size_t>(head_noun_index - 1)].lemma;
    m.sentence_id = s.id;
    m.participle_index = participle_index;
    m.alpha_index = alpha_index;
    out.matches.push_back(std::move(m));
    out.spans.push_back(SpanOutcome::Valid);
  }
  return out;
}

Outcome scan_hyphenated(const Sentence& s, std::string_view participle,
                        const std::set<std::string>& attested_participle_forms,
                        const Config& config) {
  Outcome out;
  for (const Token& t : s.tokens) {
    const std::size_t hyphen = t.form.rfind('-');
    if (hyphen == std::string::npos || hyphen == 0 || hyphen + 1 == t.form.size()) continue;
    const std::string tail = tags::to_lower(t.form.substr(hyphen + 1));
    if (attested_participle_forms.find(tail) == attested_participle_forms.end()) continue;
    // raw span: an alpha-hyphen-participle token
    const Token* next = s.token_at(t.index + 1);
    if (!next || !nominal(*next, config)) {
      out.spans.push_back(SpanOutcome::RejectedFilter);
      continue;
    }
    const std::string alpha_form = t.form.substr(0, hyphen);
    const std::string alpha_lemma = tags::to_lower(alpha_form);
    if (config.hyphen_noun_lexicon &&
        config.hyphen_noun_lexicon->find(alpha_lemma) == config.hyphen_noun_lexicon->end()) {
      out.spans.push_back(SpanOutcome::RejectedFilter);
      continue;
    }
    Match m;
    m.kind = Construction::Hyphenated;
    m.participle_lemma = std::string(participle);
    m.alpha_lemma = alpha_lemma;
    m.alpha_form = alpha_form;
    m.head_noun_lemma = next->lemma;
    m.sentence_id = s.id;
    m.participle_index = t.index;
    out.matches.push_back(std::move(m));
    out.spans.push_back(SpanOutcome::Valid);
  }
  return out;
}

std::vector<Match> extract_passive(const Sentence& s, std::string_view participle,
                                   const Config& config) {
  return scan_passive(s, make_queries(participle, config), config).matches;
}

std::vector<Match> extract_reduced_relative(const Sentence& s, std::string_view participle,
                                            const Config& config) {
  return scan_reduced_relative(s, make_queries(participle, config), config).matches;
}

std::vector<Match> extract_nvn(const Sentence& s, std::string_view participle,
                               const Config& config) {
  return scan_nvn(s, make_queries(participle, config), config).matches;
}

std::vector<Match> extract_hyphenated(const Sentence& s, std::string_view participle,
                                      const std::set<std::string>& attested_participle_forms,
                                      const Config& config) {
  return scan_hyphenated(s, participle, attested_participle_forms, config).matches;
}

std::string to_tsv_line(const Match& m) {
  std::ostringstream out;
  out << name(m.kind) << '\t' << m.participle_lemma << '\t' << m.alpha_form << '\t'
      << m.alpha_lemma << '\t' << field_or_marker(m.head_noun_lemma) << '\t'
      << field_or_marker(m.preposition) << '\t' << m.sentence_id << '\t' << m.participle_index
      << '\t' << (m.alpha_index ? std::to_string(*m.alpha_index) : std::string("_"));
  return out.str();
}

Match from_tsv_line(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  if (fields.size() != 9) throw ConfigError("malformed match row: expected 9 columns");
  auto kind = construction_from_name(fields[0]);
  if (!kind) throw ConfigError("unknown construction '" + fields[0] + "'");
  Match m;
  m.kind = *kind;
  m.participle_lemma = fields[1];
  m.alpha_form = fields[2];
  m.alpha_lemma = fields[3];
  if (fields[4] != "_") m.head_noun_lemma = fields[4];
  if (fields[5] != "_") m.preposition = fields[5];
  m.sentence_id = fields[6];
  try {
    m.participle_index = std::stoi(fields[7]);
    if (fields[8] != "_") m.alpha_index = std::stoi(fields[8]);
  } catch (const std::exception&) {
    throw ConfigError("malformed match row: bad token index");
  }
  return m;
}

void write_matches_tsv(const std::filesystem::path& path, std::span<const Match> matches) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  for (const Match& m : matches) out << to_tsv_line(m) << '\n';
}

std::vector<Match> read_matches_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::vector<Match> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(from_tsv_line(line));
  }
  return out;
}

}  // namespace slotentropy::extract
