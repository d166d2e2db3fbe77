#include "slotentropy/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "slotentropy/conllu.hpp"
#include "slotentropy/errors.hpp"
#include "slotentropy/rng.hpp"

namespace slotentropy::synth {

namespace {

using extract::Construction;
using extract::Match;

const std::vector<std::string>& builtin_nouns() {
  static const std::vector<std::string> nouns = {
      "tear",  "blood",  "grass",  "wine",   "coffee", "ink",    "mud",     "oil",
      "rust",  "smoke",  "dust",   "water",  "sweat",  "juice",  "berry",   "dirt",
      "sand",  "clay",   "salt",   "sun",    "wind",   "fire",   "snow",    "moss",
      "honey", "syrup",  "grease", "tar",    "pollen", "resin",  "sap",     "milk",
      "egg",   "fruit",  "ash",    "soot",   "plaster", "gravel", "chalk",  "foam"};
  return nouns;
}

const std::vector<std::string>& head_nouns() {
  static const std::vector<std::string> nouns = {"pillow", "shirt",   "floor", "wall",
                                                 "carpet", "banner",  "window", "fence",
                                                 "blanket", "curtain"};
  return nouns;
}

// Assembles one sentence; heads are recorded as builder positions and fixed
// up on finish, so templates stay readable when slots shift.
class SentenceBuilder {
 public:
  explicit SentenceBuilder(std::string id) { sentence_.id = std::move(id); }

  int add(std::string form, std::string lemma, std::string xpos, int head_pos,
          std::string deprel, std::string upos) {
    Token t;
    t.index = static_cast<int>(sentence_.tokens.size()) + 1;
    t.form = std::move(form);
    t.lemma = std::move(lemma);
    t.xpos = std::move(xpos);
    t.upos = std::move(upos);
    t.deprel = std::move(deprel);
    t.head = head_pos;  // builder position; resolved in finish()
    sentence_.tokens.push_back(std::move(t));
    return t.index - 1;
  }

  Sentence finish() {
    for (Token& t : sentence_.tokens) t.head = t.head < 0 ? 0 : t.head + 1;
    return std::move(sentence_);
  }

 private:
  Sentence sentence_;
};

struct Emitted {
  Sentence sentence;
  std::vector<Match> truth;
};

class Generator {
 public:
  explicit Generator(const SynthSpec& spec) : spec_(spec) {}

  GeneratedCorpus run() {
    GeneratedCorpus out;
    for (int i = 0; i < spec_.n_participles; ++i) {
      auto [lemma, form] = participle(i);
      out.participles.push_back(lemma);
      emit_participle(out, lemma, form, spec_.cells, {},
                      rng::derive_stream(spec_.seed, "participle", static_cast<std::uint64_t>(i)));
    }
    for (std::size_t i = 0; i < spec_.sparse.size(); ++i) {
      const SparseParticiple& sparse = spec_.sparse[i];
      std::string form = participle_form(sparse.lemma);
      out.participles.push_back(sparse.lemma);
      std::map<Construction, CellSpec> cells = spec_.cells;
      for (const auto& [kind, cell] : sparse.cells) cells[kind] = cell;
      emit_participle(out, sparse.lemma, form, cells, sparse.pad_rejects,
                      rng::derive_stream(spec_.seed, "sparse", static_cast<std::uint64_t>(i)));
    }
    return out;
  }

 private:
  std::pair<std::string, std::string> participle(int i) const {
    const auto& inventory = participle_inventory();
    if (i < static_cast<int>(inventory.size())) return inventory[static_cast<std::size_t>(i)];
    std::string lemma = "verb" + std::to_string(i);
    return {lemma, lemma + "ed"};
  }

  std::string participle_form(const std::string& lemma) const {
    for (const auto& [l, f] : participle_inventory()) {
      if (l == lemma) return f;
    }
    if (lemma.size() > 1 && lemma.back() == 'e') return lemma + "d";
    return lemma + "ed";
  }

  std::string next_id() { return "synth:" + std::to_string(++counter_); }
  std::string marker() { return "d" + std::to_string(counter_); }

  // builds the Zipf cumulative weight table for a cell
  static std::vector<double> cumulative_weights(const CellSpec& cell, double exponent) {
    std::vector<double> cum(static_cast<std::size_t>(cell.vocab));
    double total = 0.0;
    for (int r = 1; r <= cell.vocab; ++r) {
      total += std::pow(static_cast<double>(r), -exponent);
      cum[static_cast<std::size_t>(r - 1)] = total;
    }
    return cum;
  }

  static int draw_rank(const std::vector<double>& cum, rng::SplitMix64& gen) {
    const double u = gen.uniform01() * cum.back();
    auto it = std::lower_bound(cum.begin(), cum.end(), u);
    if (it == cum.end()) --it;
    return static_cast<int>(it - cum.begin()) + 1;
  }

  void emit_participle(GeneratedCorpus& out, const std::string& lemma, const std::string& form,
                       const std::map<Construction, CellSpec>& cells,
                       const std::map<Construction, int>& pad_rejects, std::uint64_t p_seed) {
    rng::SplitMix64 jitter_gen(rng::derive_stream(p_seed, "jitter"));
    const double jitter = (jitter_gen.uniform01() * 2.0 - 1.0) * spec_.zipf_jitter;

    for (Construction kind : extract::kAllConstructions) {
      auto it = cells.find(kind);
      if (it == cells.end() || it->second.tokens <= 0) continue;
      const CellSpec& cell = it->second;
      const double exponent = std::max(0.0, cell.zipf + (cell.zipf > 0.0 ? jitter : jitter * 0.1));
      const std::vector<double> cum = cumulative_weights(cell, exponent);
      rng::SplitMix64 gen(rng::derive_stream(p_seed, extract::name(kind)));
      for (int t = 0; t < cell.tokens; ++t) {
        const std::string alpha = alpha_word(draw_rank(cum, gen));
        const std::string& head =
            head_nouns()[static_cast<std::size_t>(gen.bounded(head_nouns().size()))];
        Emitted e = emit_match(kind, lemma, form, alpha, head, gen);
        out.sentences.push_back(std::move(e.sentence));
        for (Match& m : e.truth) out.truth.push_back(std::move(m));
      }
    }

    emit_attestation(out, lemma, form);

    rng::SplitMix64 decoy_gen(rng::derive_stream(p_seed, "decoys"));
    for (int dtype = 0; spec_.decoys_per_participle > 0; ++dtype) {
      if (dtype >= spec_.decoys_per_participle) break;
      out.sentences.push_back(emit_decoy(dtype % 5, lemma, form, decoy_gen));
    }
    for (const auto& [kind, count] : pad_rejects) {
      for (int i = 0; i < count; ++i) {
        // hyphen-before-verb decoys pad raw counts without adding matches
        const int dtype = kind == Construction::Hyphenated ? 3 : decoy_for(kind);
        out.sentences.push_back(emit_decoy(dtype, lemma, form, decoy_gen));
      }
    }
  }

  static int decoy_for(Construction kind) {
    switch (kind) {
      case Construction::Passive:
        return 0;  // relativizer filter
      case Construction::ReducedRelative:
        return 4;  // clause-attached preposition
      case Construction::Nvn:
        return 2;  // object-position alpha
      case Construction::Hyphenated:
        return 3;  // hyphen before verb
    }
    return 0;
  }

  Emitted emit_match(Construction kind, const std::string& lemma, const std::string& form,
                     const std::string& alpha, const std::string& head, rng::SplitMix64& gen) {
    switch (kind) {
      case Construction::Passive:
        return emit_passive(lemma, form, alpha, head, gen);
      case Construction::ReducedRelative:
        return emit_reduced_relative(lemma, form, alpha, head, gen);
      case Construction::Nvn:
        return emit_nvn(lemma, form, alpha, head);
      case Construction::Hyphenated:
        return emit_hyphenated(lemma, form, alpha, head);
    }
    return {};
  }

  Emitted emit_passive(const std::string& lemma, const std::string& form,
                       const std::string& alpha, const std::string& head, rng::SplitMix64& gen) {
    const bool adverb = gen.bounded(4) == 0;
    const bool prep_style = gen.bounded(3) == 0;
    const std::string prep = gen.bounded(2) == 0 ? "with" : "by";
    SentenceBuilder b(next_id());
    int root = -1;
    const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
    const int det = b.add("The", "the", "DT", 0, "det", "DET");
    const int subject = b.add(head, head, "NN", 0, "nsubj:pass", "NOUN");
    const int be = b.add("was", "be", "VBD", 0, "aux:pass", "AUX");
    int adv = -1;
    if (adverb) adv = b.add("heavily", "heavily", "RB", 0, "advmod", "ADV");
    const int part = b.add(form, lemma, "VVN", -1, "root", "VERB");
    const int prep_pos = b.add(prep, prep, "IN", 0, "case", "ADP");
    const int alpha_pos = b.add(alpha, alpha, "NN", 0, "obl", "NOUN");
    const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
    root = part;
    Sentence s = fixup(b, {{marker_pos, root},
                           {det, subject},
                           {subject, root},
                           {be, root},
                           {adv, root},
                           {prep_pos, prep_style ? -2 : alpha_pos},
                           {alpha_pos, prep_style ? -3 : root},
                           {dot, root}},
                       root, prep_pos);
    Match m;
    m.kind = Construction::Passive;
    m.participle_lemma = lemma;
    m.alpha_lemma = alpha;
    m.alpha_form = alpha;
    m.head_noun_lemma = head;
    m.preposition = prep;
    m.sentence_id = s.id;
    m.participle_index = part + 1;
    m.alpha_index = alpha_pos + 1;
    return {std::move(s), {std::move(m)}};
  }

  Emitted emit_reduced_relative(const std::string& lemma, const std::string& form,
                                const std::string& alpha, const std::string& head,
                                rng::SplitMix64& gen) {
    const bool prep_style = gen.bounded(3) == 0;
    const std::string prep = gen.bounded(2) == 0 ? "with" : "by";
    SentenceBuilder b(next_id());
    const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
    const int det = b.add("The", "the", "DT", 0, "det", "DET");
    const int subject = b.add(head, head, "NN", 0, "nsubj", "NOUN");
    const int part = b.add(form, lemma, "VVN", 0, "acl", "VERB");
    const int prep_pos = b.add(prep, prep, "IN", 0, "case", "ADP");
    const int alpha_pos = b.add(alpha, alpha, "NN", 0, "obl", "NOUN");
    const int verb = b.add("vanished", "vanish", "VVD", -1, "root", "VERB");
    const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
    Sentence s = fixup(b, {{marker_pos, verb},
                           {det, subject},
                           {subject, verb},
                           {part, subject},
                           {prep_pos, prep_style ? -2 : alpha_pos},
                           {alpha_pos, prep_style ? -3 : part},
                           {dot, verb}},
                       part, prep_pos);
    Match m;
    m.kind = Construction::ReducedRelative;
    m.participle_lemma = lemma;
    m.alpha_lemma = alpha;
    m.alpha_form = alpha;
    m.head_noun_lemma = head;
    m.preposition = prep;
    m.sentence_id = s.id;
    m.participle_index = part + 1;
    m.alpha_index = alpha_pos + 1;
    return {std::move(s), {std::move(m)}};
  }

  Emitted emit_nvn(const std::string& lemma, const std::string& form, const std::string& alpha,
                   const std::string& head) {
    SentenceBuilder b(next_id());
    const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
    const int det = b.add("The", "the", "DT", 0, "det", "DET");
    const int alpha_pos = b.add(alpha, alpha, "NN", 0, "compound", "NOUN");
    const int part = b.add(form, lemma, "VVN", 0, "amod", "VERB");
    const int subject = b.add(head, head, "NN", 0, "nsubj", "NOUN");
    const int verb = b.add("sat", "sit", "VVD", -1, "root", "VERB");
    const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
    Sentence s = fixup(b, {{marker_pos, verb},
                           {det, subject},
                           {alpha_pos, part},
                           {part, subject},
                           {subject, verb},
                           {dot, verb}},
                       -1, -1);
    Match m;
    m.kind = Construction::Nvn;
    m.participle_lemma = lemma;
    m.alpha_lemma = alpha;
    m.alpha_form = alpha;
    m.head_noun_lemma = head;
    m.sentence_id = s.id;
    m.participle_index = part + 1;
    m.alpha_index = alpha_pos + 1;
    return {std::move(s), {std::move(m)}};
  }

  Emitted emit_hyphenated(const std::string& lemma, const std::string& form,
                          const std::string& alpha, const std::string& head) {
    const std::string compound = alpha + "-" + form;
    SentenceBuilder b(next_id());
    const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
    const int det = b.add("The", "the", "DT", 0, "det", "DET");
    const int comp = b.add(compound, compound, "JJ", 0, "amod", "ADJ");
    const int subject = b.add(head, head, "NN", 0, "nsubj", "NOUN");
    const int verb = b.add("gleamed", "gleam", "VVD", -1, "root", "VERB");
    const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
    Sentence s = fixup(b, {{marker_pos, verb},
                           {det, subject},
                           {comp, subject},
                           {subject, verb},
                           {dot, verb}},
                       -1, -1);
    Match m;
    m.kind = Construction::Hyphenated;
    m.participle_lemma = lemma;
    m.alpha_lemma = alpha;
    m.alpha_form = alpha;
    m.head_noun_lemma = head;
    m.sentence_id = s.id;
    m.participle_index = comp + 1;
    return {std::move(s), {std::move(m)}};
  }

  void emit_attestation(GeneratedCorpus& out, const std::string& lemma, const std::string& form) {
    SentenceBuilder b(next_id());
    const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
    const int they = b.add("They", "they", "PP", 0, "nsubj", "PRON");
    const int had = b.add("had", "have", "VHD", 0, "aux", "AUX");
    const int part = b.add(form, lemma, "VVN", -1, "root", "VERB");
    const int it = b.add("it", "it", "PP", 0, "obj", "PRON");
    const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
    out.sentences.push_back(
        fixup(b, {{marker_pos, part}, {they, part}, {had, part}, {it, part}, {dot, part}}));
  }

  Sentence emit_decoy(int dtype, const std::string& lemma, const std::string& form,
                      rng::SplitMix64& gen) {
    switch (dtype) {
      case 0: {  // relativizer passive: filtered out
        const std::string rel = gen.bounded(2) == 0 ? "which" : "that";
        SentenceBuilder b(next_id());
        const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
        const int det = b.add("The", "the", "DT", 0, "det", "DET");
        const int noun = b.add("pillow", "pillow", "NN", 0, "nsubj", "NOUN");
        const int wdt = b.add(rel, rel, "WDT", 0, "nsubj:pass", "PRON");
        const int be = b.add("was", "be", "VBD", 0, "aux:pass", "AUX");
        const int part = b.add(form, lemma, "VVN", 0, "acl:relcl", "VERB");
        const int prep = b.add("with", "with", "IN", 0, "case", "ADP");
        const int alpha = b.add("tears", "tear", "NN", 0, "obl", "NOUN");
        const int verb = b.add("vanished", "vanish", "VVD", -1, "root", "VERB");
        const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
        return fixup(b, {{marker_pos, verb}, {det, noun}, {noun, verb}, {wdt, part}, {be, part},
                         {part, noun}, {prep, alpha}, {alpha, part}, {dot, verb}});
      }
      case 1: {  // passive whose preposition opens a clause: no valid alpha
        SentenceBuilder b(next_id());
        const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
        const int it = b.add("It", "it", "PP", 0, "nsubj:pass", "PRON");
        const int be = b.add("was", "be", "VBD", 0, "aux:pass", "AUX");
        const int part = b.add(form, lemma, "VVN", -1, "root", "VERB");
        const int because = b.add("because", "because", "IN", 0, "mark", "SCONJ");
        const int dye = b.add("dye", "dye", "NN", 0, "nsubj", "NOUN");
        const int leaked = b.add("leaked", "leak", "VVD", 0, "advcl", "VERB");
        const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
        return fixup(b, {{marker_pos, part}, {it, part}, {be, part}, {because, leaked},
                         {dye, leaked}, {leaked, part}, {dot, part}});
      }
      case 2: {  // NVN surface hit where alpha is an object, not a modifier
        SentenceBuilder b(next_id());
        const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
        const int they = b.add("They", "they", "PP", 0, "nsubj", "PRON");
        const int taught = b.add("taught", "teach", "VVD", -1, "root", "VERB");
        const int adults = b.add("adults", "adult", "NNS", 0, "iobj", "NOUN");
        const int part = b.add(form, lemma, "VVN", 0, "amod", "VERB");
        const int glass = b.add("glass", "glass", "NN", 0, "compound", "NOUN");
        const int techniques = b.add("techniques", "technique", "NNS", 0, "obj", "NOUN");
        const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
        return fixup(b, {{marker_pos, taught}, {they, taught}, {adults, taught}, {part, glass},
                         {glass, techniques}, {techniques, taught}, {dot, taught}});
      }
      case 3: {  // hyphenated compound before a verb: filtered out
        SentenceBuilder b(next_id());
        const std::string compound = "tear-" + form;
        const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
        const int det = b.add("The", "the", "DT", 0, "det", "DET");
        const int comp = b.add(compound, compound, "JJ", 0, "nsubj", "NOUN");
        const int verb = b.add("vanished", "vanish", "VVD", -1, "root", "VERB");
        const int quick = b.add("quickly", "quickly", "RB", 0, "advmod", "ADV");
        const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
        return fixup(b, {{marker_pos, verb}, {det, comp}, {comp, verb}, {quick, verb},
                         {dot, verb}});
      }
      default: {  // reduced relative whose preposition opens a clause
        SentenceBuilder b(next_id());
        const int marker_pos = b.add(marker(), marker(), "FW", 0, "dep", "X");
        const int det = b.add("The", "the", "DT", 0, "det", "DET");
        const int noun = b.add("pillow", "pillow", "NN", 0, "nsubj", "NOUN");
        const int part = b.add(form, lemma, "VVN", 0, "acl", "VERB");
        const int after = b.add("after", "after", "IN", 0, "mark", "SCONJ");
        const int rain = b.add("rain", "rain", "NN", 0, "nsubj", "NOUN");
        const int fell = b.add("fell", "fall", "VVD", 0, "advcl", "VERB");
        const int slept = b.add("slept", "sleep", "VVD", -1, "root", "VERB");
        const int dot = b.add(".", ".", "SENT", 0, "punct", "PUNCT");
        return fixup(b, {{marker_pos, slept}, {det, noun}, {noun, slept}, {part, noun},
                         {after, fell}, {rain, fell}, {fell, part}, {dot, slept}});
      }
    }
  }

  // Applies (token position -> head position) assignments and finishes the
  // sentence. Head codes -2/-3 realize the spaCy-style attachment: the
  // preposition hangs off the participle and the alpha off the preposition.
  Sentence fixup(SentenceBuilder& b, std::vector<std::pair<int, int>> heads,
                 int participle_pos = -1, int prep_pos = -1) {
    Sentence s = b.finish();
    for (auto [pos, head] : heads) {
      if (pos < 0) continue;
      Token& t = s.tokens[static_cast<std::size_t>(pos)];
      if (head == -1) {
        t.head = 0;
      } else if (head == -2) {  // preposition -> participle (prep link)
        t.head = participle_pos + 1;
        t.deprel = "prep";
      } else if (head == -3) {  // alpha -> preposition (object)
        t.head = prep_pos + 1;
        t.deprel = "pobj";
      } else {
        t.head = head + 1;
      }
    }
    return s;
  }

  const SynthSpec& spec_;
  std::uint64_t counter_ = 0;
};

CellSpec cell_from_json(const nlohmann::json& j) {
  CellSpec cell;
  cell.tokens = j.value("tokens", 0);
  cell.zipf = j.value("zipf", 0.0);
  cell.vocab = j.value("vocab", 100);
  if (cell.vocab < 1) throw ConfigError("synth cell vocab must be >= 1");
  return cell;
}

std::map<Construction, CellSpec> cells_from_json(const nlohmann::json& j) {
  std::map<Construction, CellSpec> cells;
  for (const auto& [key, value] : j.items()) {
    auto kind = extract::construction_from_name(key);
    if (!kind) throw ConfigError("unknown construction '" + key + "' in synth spec");
    cells[*kind] = cell_from_json(value);
  }
  return cells;
}

}  // namespace

const std::vector<std::pair<std::string, std::string>>& participle_inventory() {
  static const std::vector<std::pair<std::string, std::string>> inventory = {
      {"stain", "stained"},   {"cover", "covered"}, {"coat", "coated"},   {"fill", "filled"},
      {"line", "lined"},      {"wrap", "wrapped"},  {"design", "designed"}, {"carve", "carved"},
      {"weave", "woven"},     {"make", "made"},     {"lead", "led"},      {"build", "built"},
      {"test", "tested"},     {"train", "trained"}, {"power", "powered"}, {"fuel", "fueled"},
      {"drive", "driven"},    {"draw", "drawn"},    {"bind", "bound"},    {"write", "written"},
      {"grow", "grown"},      {"feed", "fed"},      {"teach", "taught"},  {"buy", "bought"},
      {"seal", "sealed"},     {"stuff", "stuffed"}, {"pack", "packed"},   {"load", "loaded"},
      {"trim", "trimmed"},    {"wash", "washed"},   {"soak", "soaked"},   {"bake", "baked"},
      {"dry", "dried"},       {"freeze", "frozen"}, {"shape", "shaped"},  {"forge", "forged"},
      {"mill", "milled"},     {"spin", "spun"},     {"knit", "knitted"},  {"craft", "crafted"},
      {"edge", "edged"},      {"tip", "tipped"},    {"back", "backed"},   {"face", "faced"},
      {"strike", "struck"},   {"form", "formed"},   {"cut", "cut"},       {"press", "pressed"}};
  return inventory;
}

std::string alpha_word(int rank) {
  const auto& nouns = builtin_nouns();
  if (rank >= 1 && rank <= static_cast<int>(nouns.size())) {
    return nouns[static_cast<std::size_t>(rank - 1)];
  }
  return "noun" + std::to_string(rank);
}

SynthSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open synth spec " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  SynthSpec spec;
  if (!j.contains("seed")) throw ConfigError("synth spec must set a seed");
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.n_participles = j.value("n_participles", 2);
  spec.decoys_per_participle = j.value("decoys_per_participle", 4);
  spec.zipf_jitter = j.value("zipf_jitter", 0.0);
  if (!j.contains("cells")) throw ConfigError("synth spec must define cells");
  spec.cells = cells_from_json(j.at("cells"));
  if (j.contains("sparse")) {
    for (const auto& entry : j.at("sparse")) {
      SparseParticiple sparse;
      sparse.lemma = entry.at("lemma").get<std::string>();
      if (entry.contains("cells")) sparse.cells = cells_from_json(entry.at("cells"));
      if (entry.contains("pad_rejects")) {
        for (const auto& [key, value] : entry.at("pad_rejects").items()) {
          auto kind = extract::construction_from_name(key);
          if (!kind) throw ConfigError("unknown construction '" + key + "' in pad_rejects");
          sparse.pad_rejects[*kind] = value.get<int>();
        }
      }
      spec.sparse.push_back(std::move(sparse));
    }
  }
  return spec;
}

GeneratedCorpus generate(const SynthSpec& spec) { return Generator(spec).run(); }

void generate_files(const SynthSpec& spec, const std::filesystem::path& corpus_path,
                    const std::filesystem::path& sidecar_path) {
  GeneratedCorpus corpus = generate(spec);
  std::ofstream out(corpus_path);
  if (!out) throw ConfigError("cannot open " + corpus_path.string() + " for writing");
  for (const Sentence& s : corpus.sentences) {
    out << conllu::to_conllu(s) << "\n";
  }
  extract::write_matches_tsv(sidecar_path, corpus.truth);
}

}  // namespace slotentropy::synth
