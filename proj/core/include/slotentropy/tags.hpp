#pragma once

#include <set>
#include <string>
#include <string_view>

#include "slotentropy/token.hpp"

namespace slotentropy::tags {

using TagSet = std::set<std::string, std::less<>>;

// Possessive tags excluded from the nominal class: the corpus-specific
// Z-suffixed set plus Penn's POS clitic tag.
const TagSet& default_possessive_tags();

bool is_nominal(std::string_view xpos, const TagSet& possessive);
bool is_nominal(std::string_view xpos);

// Maps a Penn Treebank tag to the Sketch Engine / TreeTagger tag the queries
// are written against. Penn lumps be/have/other under VB*; TreeTagger splits
// them into VB*/VH*/VV*, so the verb rows need the lemma. Unknown tags pass
// through unchanged, which makes the mapping a no-op on corpora already
// tagged in the query tagset.
std::string to_sketch(std::string_view xpos, std::string_view lemma);

std::string effective_tag(const Token& t);

std::string to_lower(std::string_view s);

}  // namespace slotentropy::tags
