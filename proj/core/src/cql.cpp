#include "slotentropy/cql.hpp"

#include <algorithm>
#include <cctype>

#include "slotentropy/tags.hpp"

namespace slotentropy::cql {

ParseError::ParseError(std::size_t offset, const std::string& message)
    : std::runtime_error("offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  QueryAst parse() {
    skip_ws();
    if (at_end()) throw ParseError(0, "empty query");
    QueryAst ast;
    while (!at_end() && peek() == '[') {
      ast.sequence.push_back(parse_pattern());
      skip_ws();
    }
    if (ast.sequence.empty()) throw ParseError(pos_, "expected '[' to open a token pattern");
    parse_within_suffix();
    skip_ws();
    if (!at_end()) throw ParseError(pos_, "unexpected trailing input");
    bool any_required = std::any_of(ast.sequence.begin(), ast.sequence.end(),
                                    [](const TokenPattern& p) { return !p.optional; });
    if (!any_required)
      throw ParseError(0, "query needs at least one non-optional token pattern");
    return ast;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  void expect(char c, const char* what) {
    if (at_end() || peek() != c)
      throw ParseError(pos_, std::string("expected '") + c + "' " + what);
    ++pos_;
  }

  std::string parse_identifier() {
    std::size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  // Quoted regex value with \" and \\ escapes.
  std::string parse_quoted(std::size_t* value_offset) {
    std::size_t open = pos_;
    expect('"', "to open a pattern value");
    *value_offset = pos_;
    std::string value;
    while (true) {
      if (at_end()) throw ParseError(open, "unterminated string");
      char c = text_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) throw ParseError(open, "unterminated string");
        char next = text_[pos_++];
        if (next == '"' || next == '\\') {
          value.push_back(next);
        } else {
          value.push_back(c);
          value.push_back(next);
        }
        continue;
      }
      value.push_back(c);
    }
    return value;
  }

  void check_regex(const std::string& pattern, std::size_t offset) {
    try {
      std::regex re(pattern);
    } catch (const std::regex_error& e) {
      throw ParseError(offset, std::string("invalid regex: ") + e.what());
    }
  }

  AttributeTest parse_test() {
    std::size_t name_offset = pos_;
    std::string name = parse_identifier();
    AttributeTest test;
    if (name == "tag") {
      test.attribute = Attribute::Tag;
    } else if (name == "lemma") {
      test.attribute = Attribute::Lemma;
    } else if (name == "word") {
      test.attribute = Attribute::Word;
    } else {
      throw ParseError(name_offset, "unknown attribute '" + name + "'");
    }
    skip_ws();
    if (!at_end() && peek() == '!') {
      ++pos_;
      expect('=', "after '!'");
      test.op = TestOp::NeqRegex;
    } else {
      expect('=', "after attribute name");
      test.op = TestOp::EqRegex;
    }
    skip_ws();
    std::size_t value_offset = 0;
    test.pattern = parse_quoted(&value_offset);
    check_regex(test.pattern, value_offset);
    return test;
  }

  // Bare bracket contents such as [*-stained] are word-form globs: '*' maps
  // to '.*', everything else is literal.
  std::string glob_to_regex(std::string_view glob) {
    std::string out;
    for (char c : glob) {
      if (c == '*') {
        out += ".*";
      } else if (std::string_view("\\^$.|?+()[]{}").find(c) != std::string_view::npos) {
        out.push_back('\\');
        out.push_back(c);
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  TokenPattern parse_pattern() {
    expect('[', "to open a token pattern");
    skip_ws();
    TokenPattern pattern;
    if (!at_end() && peek() != ']') {
      if (looks_like_attribute_test()) {
        pattern.tests.push_back(parse_test());
        skip_ws();
        while (!at_end() && peek() == '&') {
          ++pos_;
          skip_ws();
          pattern.tests.push_back(parse_test());
          skip_ws();
        }
      } else {
        std::size_t start = pos_;
        while (!at_end() && peek() != ']') ++pos_;
        if (at_end()) throw ParseError(start, "unbalanced '['");
        std::string raw(text_.substr(start, pos_ - start));
        while (!raw.empty() && std::isspace(static_cast<unsigned char>(raw.back()))) raw.pop_back();
        if (raw.find('"') != std::string::npos || raw.find('=') != std::string::npos)
          throw ParseError(start, "unknown attribute in token pattern");
        pattern.tests.push_back(
            AttributeTest{Attribute::Word, TestOp::EqRegex, glob_to_regex(raw)});
      }
    }
    if (at_end()) throw ParseError(pos_, "unbalanced '['");
    expect(']', "to close the token pattern");
    skip_ws();
    if (!at_end() && peek() == '?') {
      ++pos_;
      pattern.optional = true;
    }
    return pattern;
  }

  bool looks_like_attribute_test() const {
    std::size_t p = pos_;
    while (p < text_.size() && std::isalpha(static_cast<unsigned char>(text_[p]))) ++p;
    std::string_view name = text_.substr(pos_, p - pos_);
    if (name != "tag" && name != "lemma" && name != "word") return false;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && (text_[p] == '=' || text_[p] == '!');
  }

  // "within < s/>" with arbitrary interior whitespace.
  void parse_within_suffix() {
    skip_ws();
    if (at_end()) return;
    std::size_t start = pos_;
    std::string word = parse_identifier();
    if (word.empty()) return;
    if (word != "within") throw ParseError(start, "unexpected input '" + word + "'");
    skip_ws();
    expect('<', "after 'within'");
    skip_ws();
    if (at_end() || peek() != 's') throw ParseError(pos_, "expected 's' in scope marker");
    ++pos_;
    skip_ws();
    expect('/', "in scope marker");
    skip_ws();
    expect('>', "to close scope marker");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string escape_value(const std::string& pattern) {
  std::string out;
  for (char c : pattern) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

std::string_view attribute_name(Attribute a) {
  switch (a) {
    case Attribute::Tag:
      return "tag";
    case Attribute::Lemma:
      return "lemma";
    case Attribute::Word:
      return "word";
  }
  return "tag";
}

}  // namespace

QueryAst parse_query(std::string_view text) { return Parser(text).parse(); }

std::string render(const QueryAst& ast) {
  std::string out;
  for (std::size_t i = 0; i < ast.sequence.size(); ++i) {
    if (i) out += ' ';
    const TokenPattern& p = ast.sequence[i];
    out += '[';
    for (std::size_t j = 0; j < p.tests.size(); ++j) {
      if (j) out += " & ";
      const AttributeTest& t = p.tests[j];
      out += attribute_name(t.attribute);
      out += (t.op == TestOp::EqRegex) ? "=" : "!=";
      out += '"';
      out += escape_value(t.pattern);
      out += '"';
    }
    out += ']';
    if (p.optional) out += '?';
  }
  out += " within <s/>";
  return out;
}

CompiledQuery::CompiledQuery(QueryAst ast) : ast_(std::move(ast)) {
  patterns_.reserve(ast_.sequence.size());
  for (const TokenPattern& p : ast_.sequence) {
    CompiledPattern cp;
    cp.optional = p.optional;
    for (const AttributeTest& t : p.tests) {
      cp.tests.push_back({t.attribute, t.op, std::regex(t.pattern)});
    }
    patterns_.push_back(std::move(cp));
  }
}

CompiledQuery compile(QueryAst ast) { return CompiledQuery(std::move(ast)); }

bool CompiledQuery::matches(const CompiledPattern& p, const Token& t) const {
  for (const CompiledTest& test : p.tests) {
    std::string value;
    switch (test.attribute) {
      case Attribute::Tag:
        value = tags::effective_tag(t);
        break;
      case Attribute::Lemma:
        value = t.lemma;
        break;
      case Attribute::Word:
        value = t.form;
        break;
    }
    const bool hit = std::regex_match(value, test.regex);
    if (hit != (test.op == TestOp::EqRegex)) return false;
  }
  return true;
}

void CompiledQuery::enumerate(const Sentence& s, int start, std::size_t pattern_index,
                              int token_index, std::vector<Binding>& bindings,
                              std::vector<MatchSpan>& out) const {
  if (pattern_index == patterns_.size()) {
    // anchor the assignment at `start` so each one is found exactly once
    if (!bindings.empty() && bindings.front().token == start) {
      out.push_back(MatchSpan{s.id, start, bindings});
    }
    return;
  }
  const CompiledPattern& p = patterns_[pattern_index];
  const Token* tok = s.token_at(token_index);
  const bool hit = tok != nullptr && matches(p, *tok);
  if (hit) {
    bindings.push_back({pattern_index, token_index});
    enumerate(s, start, pattern_index + 1, token_index + 1, bindings, out);
    bindings.pop_back();
  }
  if (p.optional) {
    enumerate(s, start, pattern_index + 1, token_index, bindings, out);
  }
}

std::vector<MatchSpan> CompiledQuery::scan(const Sentence& s) const {
  std::vector<MatchSpan> out;
  std::vector<Binding> bindings;
  for (int start = 1; start <= s.size(); ++start) {
    std::size_t first = out.size();
    enumerate(s, start, 0, start, bindings, out);
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                     [](const MatchSpan& a, const MatchSpan& b) {
                       return a.consumed() > b.consumed();
                     });
  }
  return out;
}

}  // namespace slotentropy::cql
