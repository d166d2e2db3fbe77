#pragma once

#include <string>
#include <vector>

namespace slotentropy {

// One annotated word. `index` is 1-based within the sentence; `head` is 0 for
// the root, otherwise the 1-based index of the governing token.
struct Token {
  int index = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  int head = 0;
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string id;
  std::vector<Token> tokens;

  bool operator==(const Sentence&) const = default;

  int size() const { return static_cast<int>(tokens.size()); }

  // 1-based access; nullptr when out of range.
  const Token* token_at(int index) const {
    if (index < 1 || index > size()) return nullptr;
    return &tokens[static_cast<std::size_t>(index - 1)];
  }
};

}  // namespace slotentropy
