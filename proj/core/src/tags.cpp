#include "slotentropy/tags.hpp"

#include <cctype>

namespace slotentropy::tags {

const TagSet& default_possessive_tags() {
  static const TagSet set = {"NNZ", "NNSZ", "NPZ", "NPSZ", "POS"};
  return set;
}

bool is_nominal(std::string_view xpos, const TagSet& possessive) {
  if (xpos.empty() || xpos.front() != 'N') return false;
  return possessive.find(xpos) == possessive.end();
}

bool is_nominal(std::string_view xpos) {
  return is_nominal(xpos, default_possessive_tags());
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string to_sketch(std::string_view xpos, std::string_view lemma) {
  if (xpos == "NNP") return "NP";
  if (xpos == "NNPS") return "NPS";
  if (xpos.size() >= 2 && xpos[0] == 'V' && xpos[1] == 'B') {
    const std::string lower = to_lower(lemma);
    const std::string suffix{xpos.substr(2)};
    if (lower == "be") return std::string(xpos);
    if (lower == "have") return "VH" + suffix;
    return "VV" + suffix;
  }
  return std::string(xpos);
}

std::string effective_tag(const Token& t) { return to_sketch(t.xpos, t.lemma); }

}  // namespace slotentropy::tags
