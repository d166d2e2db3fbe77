#pragma once

#include <cstddef>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slotentropy/token.hpp"

namespace slotentropy::cql {

enum class Attribute { Tag, Lemma, Word };
enum class TestOp { EqRegex, NeqRegex };

// One attribute constraint, e.g. tag="VB.*" or tag!="NNZ". Patterns match the
// whole attribute value (anchored at both ends), mirroring CQL semantics.
struct AttributeTest {
  Attribute attribute = Attribute::Tag;
  TestOp op = TestOp::EqRegex;
  std::string pattern;

  bool operator==(const AttributeTest&) const = default;
};

// A bracketed token position: the conjunction of its tests, optionally
// skippable ('?'). An empty test list matches any token.
struct TokenPattern {
  std::vector<AttributeTest> tests;
  bool optional = false;

  bool operator==(const TokenPattern&) const = default;
};

// Scope is always a single sentence; "within <s/>" is accepted but adds
// nothing beyond what scan() already guarantees.
struct QueryAst {
  std::vector<TokenPattern> sequence;

  bool operator==(const QueryAst&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

QueryAst parse_query(std::string_view text);

// Canonical text form; parse_query(render(ast)) == ast.
std::string render(const QueryAst& ast);

struct Binding {
  std::size_t pattern = 0;  // index into QueryAst::sequence
  int token = 0;            // 1-based token index

  bool operator==(const Binding&) const = default;
  auto operator<=>(const Binding&) const = default;
};

struct MatchSpan {
  std::string sentence_id;
  int start = 0;  // first consumed token
  std::vector<Binding> bindings;

  bool operator==(const MatchSpan&) const = default;

  int consumed() const { return static_cast<int>(bindings.size()); }

  std::optional<int> token_for(std::size_t pattern) const {
    for (const Binding& b : bindings) {
      if (b.pattern == pattern) return b.token;
    }
    return std::nullopt;
  }
};

class CompiledQuery {
 public:
  explicit CompiledQuery(QueryAst ast);

  // Every distinct binding assignment at every start position. Ordered by
  // start ascending, then tokens consumed descending.
  std::vector<MatchSpan> scan(const Sentence& s) const;

  const QueryAst& ast() const { return ast_; }

 private:
  struct CompiledTest {
    Attribute attribute;
    TestOp op;
    std::regex regex;
  };
  struct CompiledPattern {
    std::vector<CompiledTest> tests;
    bool optional;
  };

  bool matches(const CompiledPattern& p, const Token& t) const;
  void enumerate(const Sentence& s, int start, std::size_t pattern_index, int token_index,
                 std::vector<Binding>& bindings, std::vector<MatchSpan>& out) const;

  QueryAst ast_;
  std::vector<CompiledPattern> patterns_;
};

CompiledQuery compile(QueryAst ast);

}  // namespace slotentropy::cql
