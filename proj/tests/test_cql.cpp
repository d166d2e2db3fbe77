#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "slotentropy/cql.hpp"
#include "slotentropy/rng.hpp"

using namespace slotentropy;
using cql::Attribute;
using cql::TestOp;

namespace {

const char* kPassiveQuery =
    R"([tag="VB.*"] [tag="RB"]? [tag="VVN" & lemma="stain"] [tag="IN"] within <s/>)";

}  // namespace

TEST_CASE("passive query parses into four patterns with an optional adverb") {
  cql::QueryAst ast = cql::parse_query(kPassiveQuery);
  REQUIRE(ast.sequence.size() == 4);
  CHECK_FALSE(ast.sequence[0].optional);
  CHECK(ast.sequence[1].optional);
  CHECK_FALSE(ast.sequence[2].optional);
  REQUIRE(ast.sequence[2].tests.size() == 2);
  CHECK(ast.sequence[2].tests[0].attribute == Attribute::Tag);
  CHECK(ast.sequence[2].tests[0].pattern == "VVN");
  CHECK(ast.sequence[2].tests[1].attribute == Attribute::Lemma);
  CHECK(ast.sequence[2].tests[1].pattern == "stain");
}

TEST_CASE("empty query fails at offset 0") {
  try {
    cql::parse_query("");
    FAIL("expected ParseError");
  } catch (const cql::ParseError& e) {
    CHECK(e.offset() == 0);
  }
  CHECK_THROWS_AS(cql::parse_query("   "), cql::ParseError);
}

TEST_CASE("minimal one-pattern query") {
  cql::QueryAst ast = cql::parse_query(R"([lemma="stain"])");
  REQUIRE(ast.sequence.size() == 1);
  REQUIRE(ast.sequence[0].tests.size() == 1);
  CHECK(ast.sequence[0].tests[0].attribute == Attribute::Lemma);
}

TEST_CASE("parse errors carry character offsets") {
  SUBCASE("unbalanced bracket") { CHECK_THROWS_AS(cql::parse_query("[tag=\"NN\""), cql::ParseError); }
  SUBCASE("unterminated quote") {
    try {
      cql::parse_query("[tag=\"NN]");
      FAIL("expected ParseError");
    } catch (const cql::ParseError& e) {
      CHECK(e.offset() == 5);
    }
  }
  SUBCASE("unknown attribute") {
    try {
      cql::parse_query("[pos=\"NN\"]");
      FAIL("expected ParseError");
    } catch (const cql::ParseError& e) {
      CHECK(e.offset() == 1);
      CHECK(std::string(e.what()).find("unknown attribute") != std::string::npos);
    }
  }
  SUBCASE("invalid regex") { CHECK_THROWS_AS(cql::parse_query("[tag=\"(\"]"), cql::ParseError); }
  SUBCASE("all-optional query") {
    CHECK_THROWS_AS(cql::parse_query("[tag=\"NN\"]? [tag=\"RB\"]?"), cql::ParseError);
  }
  SUBCASE("trailing junk") { CHECK_THROWS_AS(cql::parse_query("[tag=\"NN\"] extra"), cql::ParseError); }
}

TEST_CASE("whitespace-insensitive parsing and the within suffix") {
  cql::QueryAst spaced = cql::parse_query("[ tag = \"NN\" ]   within < s / >");
  cql::QueryAst tight = cql::parse_query("[tag=\"NN\"]");
  CHECK(spaced == tight);
}

TEST_CASE("bare glob patterns desugar to anchored word regexes") {
  cql::QueryAst ast = cql::parse_query("[*-stained]");
  REQUIRE(ast.sequence.size() == 1);
  REQUIRE(ast.sequence[0].tests.size() == 1);
  CHECK(ast.sequence[0].tests[0].attribute == Attribute::Word);
  CHECK(ast.sequence[0].tests[0].pattern == ".*-stained");
}

TEST_CASE("render/parse is a fixed point for the construction queries") {
  const std::vector<std::string> queries = {
      kPassiveQuery,
      R"([tag="N.*" & tag!="NNSZ" & tag!="NNZ" & tag!="NPZ" & tag!="NPSZ"] [tag="VVN" & lemma="stain"] [tag="IN"] within <s/>)",
      R"([tag="N.*" & tag!="NNSZ" & tag!="NNZ" & tag!="NPZ" & tag!="NPSZ"] [tag="VVN" & lemma="stain"] [tag="N.*"] within <s/>)",
      R"([*-stained])",
  };
  for (const std::string& q : queries) {
    cql::QueryAst first = cql::parse_query(q);
    std::string canonical = cql::render(first);
    cql::QueryAst second = cql::parse_query(canonical);
    CHECK(first == second);
    CHECK(cql::render(second) == canonical);
  }
}

TEST_CASE("scan finds the passive span with the optional slot skipped") {
  Sentence s = testutil::tagged(
      "s1", {"pillow/NN", "was/VBD/be", "stained/VVN/stain", "with/IN", "tears/NNS/tear"});
  cql::CompiledQuery q(cql::parse_query(kPassiveQuery));
  auto spans = q.scan(s);
  REQUIRE(spans.size() == 1);
  CHECK(spans[0].start == 2);
  CHECK(spans[0].consumed() == 3);
  CHECK(spans[0].token_for(1) == std::nullopt);  // adverb skipped
  CHECK(*spans[0].token_for(2) == 3);
}

TEST_CASE("scan returns empty when the required lemma is absent") {
  Sentence s = testutil::tagged("s2", {"it/PP", "was/VBD/be", "painted/VVN/paint", "with/IN"});
  cql::CompiledQuery q(cql::parse_query(kPassiveQuery));
  CHECK(q.scan(s).empty());
}

TEST_CASE("adverb-present sentence matches with the RB token bound") {
  Sentence s = testutil::tagged(
      "s3", {"was/VBD/be", "very/RB", "stained/VVN/stain", "with/IN"});
  cql::CompiledQuery q(cql::parse_query(kPassiveQuery));
  auto spans = q.scan(s);
  REQUIRE(spans.size() == 1);
  CHECK(*spans[0].token_for(1) == 2);
  // brute force agrees exactly
  auto oracle = testutil::brute_force_scan(q.ast(), s);
  CHECK(testutil::binding_set(spans) == testutil::binding_set(oracle));
}

TEST_CASE("all satisfying assignments are reported at overlapping positions") {
  // [x]? [x] over "x x x": assignments (1,2),(2,3),(1),(2),(3) anchored per start
  cql::QueryAst ast = cql::parse_query("[word=\"x\"]? [word=\"x\"]");
  Sentence s = testutil::tagged("s4", {"x/XX", "x/XX", "x/XX"});
  cql::CompiledQuery q(std::move(ast));
  auto spans = q.scan(s);
  auto oracle = testutil::brute_force_scan(q.ast(), s);
  CHECK(testutil::binding_set(spans) == testutil::binding_set(oracle));
  CHECK(spans.size() == 5);
  // ordering: start ascending, consumed descending within a start
  for (std::size_t i = 1; i < spans.size(); ++i) {
    if (spans[i - 1].start == spans[i].start) {
      CHECK(spans[i - 1].consumed() >= spans[i].consumed());
    } else {
      CHECK(spans[i - 1].start < spans[i].start);
    }
  }
}

namespace {

// random query over small alphabets; always at least one required pattern
cql::QueryAst random_query(rng::SplitMix64& gen) {
  static const std::vector<std::string> patterns = {"a", "b",  "c",   "a|b", ".*",
                                                    "x", "ab", "a.*", "[ab]"};
  cql::QueryAst ast;
  const std::size_t n_patterns = 1 + gen.bounded(5);
  for (std::size_t i = 0; i < n_patterns; ++i) {
    cql::TokenPattern p;
    const std::size_t n_tests = gen.bounded(3);
    for (std::size_t j = 0; j < n_tests; ++j) {
      cql::AttributeTest test;
      const std::uint64_t which = gen.bounded(3);
      test.attribute = which == 0   ? Attribute::Tag
                       : which == 1 ? Attribute::Lemma
                                    : Attribute::Word;
      test.op = gen.bounded(4) == 0 ? TestOp::NeqRegex : TestOp::EqRegex;
      test.pattern = patterns[gen.bounded(patterns.size())];
      p.tests.push_back(test);
    }
    p.optional = gen.bounded(3) == 0;
    ast.sequence.push_back(std::move(p));
  }
  ast.sequence[gen.bounded(ast.sequence.size())].optional = false;
  return ast;
}

Sentence random_sentence(rng::SplitMix64& gen, std::string id) {
  static const std::vector<std::string> words = {"a", "b", "c", "ab", "x"};
  const int n = 1 + static_cast<int>(gen.bounded(12));
  std::vector<Token> tokens;
  for (int i = 1; i <= n; ++i) {
    Token t = testutil::tok(i, words[gen.bounded(words.size())], words[gen.bounded(words.size())],
                            words[gen.bounded(words.size())], i == 1 ? 0 : 1, "dep");
    tokens.push_back(std::move(t));
  }
  return testutil::sent(std::move(id), std::move(tokens));
}

}  // namespace

TEST_CASE("equivalence oracle: scan matches brute force on 1000 random cases") {
  rng::SplitMix64 gen(20240217);
  for (int round = 0; round < 1000; ++round) {
    cql::QueryAst ast = random_query(gen);
    Sentence s = random_sentence(gen, "r" + std::to_string(round));
    cql::CompiledQuery q(ast);
    auto got = testutil::binding_set(q.scan(s));
    auto want = testutil::binding_set(testutil::brute_force_scan(ast, s));
    REQUIRE(got == want);
  }
}

TEST_CASE("render/parse fixed point holds for random ASTs") {
  rng::SplitMix64 gen(99);
  for (int round = 0; round < 200; ++round) {
    cql::QueryAst ast = random_query(gen);
    cql::QueryAst reparsed = cql::parse_query(cql::render(ast));
    CHECK(ast == reparsed);
  }
}

TEST_CASE("no cross-sentence matches: concatenation adds nothing within halves") {
  rng::SplitMix64 gen(4242);
  cql::QueryAst ast = cql::parse_query("[word=\"a\"] [word=\"b\"]?");
  cql::CompiledQuery q(ast);
  for (int round = 0; round < 200; ++round) {
    Sentence s1 = random_sentence(gen, "left");
    Sentence s2 = random_sentence(gen, "right");
    Sentence joined = s1;
    joined.id = "joined";
    for (Token t : s2.tokens) {
      t.index += s1.size();
      t.head = t.head == 0 ? 0 : t.head + s1.size();
      joined.tokens.push_back(std::move(t));
    }
    auto left = testutil::binding_set(q.scan(s1));
    auto right = q.scan(s2);
    auto combined = q.scan(joined);

    // every per-sentence match appears in the concatenation
    std::set<std::vector<cql::Binding>> combined_set = testutil::binding_set(combined);
    for (const auto& bindings : left) {
      CHECK(combined_set.count(bindings) == 1);
    }
    for (const auto& span : right) {
      std::vector<cql::Binding> shifted = span.bindings;
      for (auto& b : shifted) b.token += s1.size();
      CHECK(combined_set.count(shifted) == 1);
    }
    // and matches inside either half match the per-sentence scans exactly
    std::set<std::vector<cql::Binding>> within;
    for (const auto& span : combined) {
      const int last = span.bindings.back().token;
      if (last <= s1.size()) {
        within.insert(span.bindings);
      }
    }
    CHECK(within == left);
  }
}
