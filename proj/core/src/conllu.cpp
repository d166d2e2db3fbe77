#include "slotentropy/conllu.hpp"

#include <cctype>
#include <istream>
#include <sstream>

namespace slotentropy::conllu {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Multiword ranges ("3-4") and empty nodes ("3.1") are skipped per contract.
bool is_skipped_id(std::string_view id) {
  auto dash = id.find('-');
  if (dash != std::string_view::npos) {
    return all_digits(id.substr(0, dash)) && all_digits(id.substr(dash + 1));
  }
  auto dot = id.find('.');
  if (dot != std::string_view::npos) {
    return all_digits(id.substr(0, dot)) && all_digits(id.substr(dot + 1));
  }
  return false;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string unmarked(const std::string& field) { return field == "_" ? std::string() : field; }

// stoi without the surprise out_of_range escape on absurd digit strings
int parse_int_field(const std::string& text, std::size_t line, const char* what) {
  try {
    return std::stoi(text);
  } catch (const std::exception&) {
    throw FormatError(line, std::string(what) + " '" + text + "' out of range");
  }
}

}  // namespace

FormatError::FormatError(std::size_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

Reader::Reader(std::istream& in, std::string source_name, ReaderOptions options)
    : in_(in), source_(std::move(source_name)), options_(options) {}

std::optional<std::string> validate(const Sentence& s) {
  const int n = s.size();
  for (const Token& t : s.tokens) {
    if (t.form.empty()) return "token " + std::to_string(t.index) + " has empty form";
    if (t.lemma.empty()) return "token " + std::to_string(t.index) + " has empty lemma";
    if (t.head == t.index) return "token " + std::to_string(t.index) + " heads itself";
    if (t.head < 0 || t.head > n)
      return "token " + std::to_string(t.index) + " head " + std::to_string(t.head) +
             " out of range";
  }
  // every token must reach the root; a cycle would loop more than n steps
  for (const Token& t : s.tokens) {
    int cursor = t.index;
    int steps = 0;
    while (cursor != 0) {
      cursor = s.tokens[static_cast<std::size_t>(cursor - 1)].head;
      if (++steps > n) return "head cycle involving token " + std::to_string(t.index);
    }
  }
  return std::nullopt;
}

std::optional<Sentence> Reader::parse_block(const std::vector<RawLine>& lines,
                                            const std::vector<std::string>& comments) {
  Sentence sentence;
  sentence.id = source_ + ":" + std::to_string(block_index_);
  for (const std::string& c : comments) {
    constexpr std::string_view kSentId = "# sent_id = ";
    if (c.rfind(kSentId, 0) == 0) sentence.id = c.substr(kSentId.size());
  }

  std::size_t first_line = lines.empty() ? line_ : lines.front().number;
  for (const RawLine& raw : lines) {
    std::vector<std::string> fields = split_tabs(raw.text);
    if (fields.size() != 10) {
      throw FormatError(raw.number, "expected 10 tab-separated fields, got " +
                                        std::to_string(fields.size()));
    }
    if (is_skipped_id(fields[0])) continue;
    if (!all_digits(fields[0])) {
      throw FormatError(raw.number, "non-integer token id '" + fields[0] + "'");
    }
    const std::string& head_field = fields[6];
    bool head_ok = all_digits(head_field) ||
                   (head_field.size() > 1 && head_field[0] == '-' &&
                    all_digits(std::string_view(head_field).substr(1)));
    if (!head_ok) {
      throw FormatError(raw.number, "non-integer HEAD '" + head_field + "'");
    }

    Token t;
    t.index = static_cast<int>(sentence.tokens.size()) + 1;
    t.form = unmarked(fields[1]);
    t.lemma = unmarked(fields[2]);
    t.upos = unmarked(fields[3]);
    t.xpos = unmarked(fields[4]);
    t.head = parse_int_field(head_field, raw.number, "HEAD");
    t.deprel = unmarked(fields[7]);

    int declared = parse_int_field(fields[0], raw.number, "token id");
    if (declared != t.index) {
      diagnostics_.push_back({sentence.id, raw.number,
                              "token id " + fields[0] + " out of sequence (expected " +
                                  std::to_string(t.index) + "); sentence skipped"});
      return std::nullopt;
    }
    sentence.tokens.push_back(std::move(t));
  }

  if (sentence.tokens.empty()) return std::nullopt;

  if (auto problem = validate(sentence)) {
    diagnostics_.push_back({sentence.id, first_line, *problem + "; sentence skipped"});
    return std::nullopt;
  }
  return sentence;
}

std::optional<Sentence> Reader::next() {
  std::string line;
  std::vector<RawLine> block;
  std::vector<std::string> comments;
  while (true) {
    if (!std::getline(in_, line)) {
      if (block.empty()) return std::nullopt;
    } else {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty() && line[0] == '#') {
        comments.push_back(line);
        continue;
      }
      if (!line.empty()) {
        block.push_back({line, line_});
        continue;
      }
      if (block.empty() && comments.empty()) continue;  // stray blank line
    }
    // end of block (blank line or EOF with content)
    ++block_index_;
    std::optional<Sentence> parsed;
    try {
      parsed = parse_block(block, comments);
    } catch (const FormatError& e) {
      if (!options_.skip_malformed) throw;
      diagnostics_.push_back(
          {source_ + ":" + std::to_string(block_index_), e.line(), e.what()});
      parsed = std::nullopt;
    }
    block.clear();
    comments.clear();
    if (parsed) {
      ++yielded_;
      return parsed;
    }
    if (!in_) return std::nullopt;
  }
}

std::vector<Sentence> parse_all(std::istream& in, std::string source_name, ReaderOptions options,
                                std::vector<Diagnostic>* diagnostics) {
  Reader reader(in, std::move(source_name), options);
  std::vector<Sentence> out;
  while (auto s = reader.next()) out.push_back(std::move(*s));
  if (diagnostics) *diagnostics = reader.diagnostics();
  return out;
}

std::string to_conllu(const Sentence& s) {
  std::ostringstream out;
  out << "# sent_id = " << s.id << "\n";
  auto field = [](const std::string& v) { return v.empty() ? std::string("_") : v; };
  for (const Token& t : s.tokens) {
    out << t.index << '\t' << field(t.form) << '\t' << field(t.lemma) << '\t' << field(t.upos)
        << '\t' << field(t.xpos) << '\t' << '_' << '\t' << t.head << '\t' << field(t.deprel)
        << '\t' << '_' << '\t' << '_' << "\n";
  }
  return out.str();
}

bool DuplicateFilter::keep(const Sentence& s) {
  std::string key;
  for (const Token& t : s.tokens) {
    key += t.form;
    key += '\x1f';
  }
  return seen_.insert(std::move(key)).second;
}

std::vector<Sentence> filter_exact_duplicates(std::span<const Sentence> sentences) {
  DuplicateFilter filter;
  std::vector<Sentence> out;
  for (const Sentence& s : sentences) {
    if (filter.keep(s)) out.push_back(s);
  }
  return out;
}

}  // namespace slotentropy::conllu
