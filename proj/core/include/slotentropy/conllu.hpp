#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotentropy/token.hpp"

namespace slotentropy::conllu {

// Structural problem in the input bytes (wrong column count, non-integer
// HEAD). Carries the 1-based line number.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A sentence that parsed structurally but violated a model invariant
// (head out of range, head cycle, empty form/lemma). Such sentences are
// reported here and skipped; the stream continues.
struct Diagnostic {
  std::string sentence_id;
  std::size_t line = 0;
  std::string message;
};

struct ReaderOptions {
  // When set, structural FormatErrors are also downgraded to diagnostics and
  // the offending block is skipped. Used by the pipeline, which must survive
  // noisy web corpora; the default contract is strict.
  bool skip_malformed = false;
};

// Streaming one-block-at-a-time reader. Memory use is bounded by the largest
// sentence, never by file size.
class Reader {
 public:
  Reader(std::istream& in, std::string source_name = "input", ReaderOptions options = {});

  std::optional<Sentence> next();

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t sentences_yielded() const { return yielded_; }

 private:
  struct RawLine {
    std::string text;
    std::size_t number;
  };

  std::optional<Sentence> parse_block(const std::vector<RawLine>& lines,
                                      const std::vector<std::string>& comments);

  std::istream& in_;
  std::string source_;
  ReaderOptions options_;
  std::size_t line_ = 0;
  std::size_t block_index_ = 0;
  std::size_t yielded_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

std::vector<Sentence> parse_all(std::istream& in, std::string source_name = "input",
                                ReaderOptions options = {},
                                std::vector<Diagnostic>* diagnostics = nullptr);

// Returns an error message when head pointers do not form a forest rooted at
// 0, or a token invariant fails; std::nullopt when the sentence is valid.
std::optional<std::string> validate(const Sentence& s);

std::string to_conllu(const Sentence& s);

// Keeps the first occurrence of each distinct token-form sequence.
class DuplicateFilter {
 public:
  bool keep(const Sentence& s);

 private:
  std::set<std::string> seen_;
};

std::vector<Sentence> filter_exact_duplicates(std::span<const Sentence> sentences);

}  // namespace slotentropy::conllu
