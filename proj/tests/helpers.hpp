#pragma once

// Shared test utilities and the independent oracles: a brute-force CQL
// enumerator, an adaptive-quadrature chi-square tail, a dense-covariance
// mixed-model log-likelihood, and an extended-precision entropy sum. These
// deliberately avoid the implementation paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slotentropy/conllu.hpp"
#include "slotentropy/cql.hpp"
#include "slotentropy/extract.hpp"
#include "slotentropy/lmm.hpp"
#include "slotentropy/tags.hpp"
#include "slotentropy/token.hpp"

namespace testutil {

inline slotentropy::Token tok(int index, std::string form, std::string lemma, std::string xpos,
                              int head, std::string deprel) {
  slotentropy::Token t;
  t.index = index;
  t.form = std::move(form);
  t.lemma = std::move(lemma);
  t.xpos = std::move(xpos);
  t.head = head;
  t.deprel = std::move(deprel);
  return t;
}

inline slotentropy::Sentence sent(std::string id, std::vector<slotentropy::Token> tokens) {
  slotentropy::Sentence s;
  s.id = std::move(id);
  s.tokens = std::move(tokens);
  return s;
}

// Sentence from compact "form/xpos" or "form/xpos/lemma" words; heads all 0.
// Enough for query-engine tests, which ignore the tree.
inline slotentropy::Sentence tagged(std::string id, const std::vector<std::string>& words) {
  std::vector<slotentropy::Token> tokens;
  int index = 1;
  for (const std::string& w : words) {
    const auto first = w.find('/');
    const auto second = w.find('/', first + 1);
    std::string form = w.substr(0, first);
    std::string xpos = second == std::string::npos ? w.substr(first + 1)
                                                   : w.substr(first + 1, second - first - 1);
    std::string lemma = second == std::string::npos ? form : w.substr(second + 1);
    tokens.push_back(tok(index++, form, lemma, xpos, 0, "dep"));
  }
  // make the head pointers a valid forest: everything hangs off token 1
  for (std::size_t i = 1; i < tokens.size(); ++i) tokens[i].head = 1;
  if (!tokens.empty()) tokens[0].head = 0;
  return sent(std::move(id), std::move(tokens));
}

// --- brute-force CQL oracle -------------------------------------------------

inline bool oracle_test(const slotentropy::cql::AttributeTest& test,
                        const slotentropy::Token& t) {
  std::string value;
  switch (test.attribute) {
    case slotentropy::cql::Attribute::Tag:
      value = slotentropy::tags::effective_tag(t);
      break;
    case slotentropy::cql::Attribute::Lemma:
      value = t.lemma;
      break;
    case slotentropy::cql::Attribute::Word:
      value = t.form;
      break;
  }
  const bool hit = std::regex_match(value, std::regex(test.pattern));
  return hit == (test.op == slotentropy::cql::TestOp::EqRegex);
}

inline bool oracle_matches(const slotentropy::cql::TokenPattern& p, const slotentropy::Token& t) {
  for (const auto& test : p.tests) {
    if (!oracle_test(test, t)) return false;
  }
  return true;
}

// Tries every start position and every optional-inclusion subset.
inline std::vector<slotentropy::cql::MatchSpan> brute_force_scan(
    const slotentropy::cql::QueryAst& ast, const slotentropy::Sentence& s) {
  using slotentropy::cql::Binding;
  using slotentropy::cql::MatchSpan;
  std::vector<std::size_t> optional_indices;
  for (std::size_t i = 0; i < ast.sequence.size(); ++i) {
    if (ast.sequence[i].optional) optional_indices.push_back(i);
  }
  std::set<std::vector<Binding>> seen;
  std::vector<MatchSpan> out;
  for (int start = 1; start <= s.size(); ++start) {
    for (std::uint64_t mask = 0; mask < (1ULL << optional_indices.size()); ++mask) {
      std::vector<Binding> bindings;
      int cursor = start;
      bool ok = true;
      for (std::size_t i = 0; i < ast.sequence.size(); ++i) {
        const auto& pattern = ast.sequence[i];
        if (pattern.optional) {
          const std::size_t bit =
              std::find(optional_indices.begin(), optional_indices.end(), i) -
              optional_indices.begin();
          if (!(mask & (1ULL << bit))) continue;  // this subset skips it
        }
        const slotentropy::Token* t = s.token_at(cursor);
        if (!t || !oracle_matches(pattern, *t)) {
          ok = false;
          break;
        }
        bindings.push_back({i, cursor});
        ++cursor;
      }
      if (!ok || bindings.empty() || bindings.front().token != start) continue;
      if (seen.insert(bindings).second) {
        out.push_back(MatchSpan{s.id, start, bindings});
      }
    }
  }
  return out;
}

inline std::set<std::vector<slotentropy::cql::Binding>> binding_set(
    const std::vector<slotentropy::cql::MatchSpan>& spans) {
  std::set<std::vector<slotentropy::cql::Binding>> out;
  for (const auto& span : spans) out.insert(span.bindings);
  return out;
}

// --- chi-square quadrature oracle -------------------------------------------

inline double chi2_pdf(double t, int df) {
  const double a = 0.5 * df;
  return std::exp((a - 1.0) * std::log(t) - 0.5 * t - a * std::log(2.0) - std::lgamma(a));
}

inline double adaptive_simpson(double (*f)(double, int), int df, double a, double b, double fa,
                               double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm, df);
  const double frm = f(rm, df);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, df, a, m, fa, fm, flm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, df, m, b, fm, fb, frm, right, tol / 2.0, depth - 1);
}

// Upper tail by integrating the density from x out to where it is negligible.
// Panelized so the adaptive pass cannot skip over the density bump when x sits
// far into the lower tail.
inline double chi2_sf_quadrature(double x, int df) {
  if (x <= 0.0) return 1.0;
  const double upper = x + std::max(60.0 * std::sqrt(2.0 * df) + 2.0 * df, 250.0);
  const int panels = 128;
  const double width = (upper - x) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = x + i * width;
    const double b = a + width;
    const double fa = chi2_pdf(a, df);
    const double fb = chi2_pdf(b, df);
    const double fm = chi2_pdf(0.5 * (a + b), df);
    const double whole = width / 6.0 * (fa + 4.0 * fm + fb);
    total += adaptive_simpson(&chi2_pdf, df, a, b, fa, fb, fm, whole, 1e-13 / panels, 40);
  }
  return total;
}

// --- dense mixed-model log-likelihood oracle ---------------------------------

// Evaluates the marginal Gaussian log-density at given parameters by building
// the full covariance matrix and Cholesky-factoring it; independent of the
// block-structured profiling in the implementation.
inline double dense_lmm_loglik(const std::vector<slotentropy::lmm::LongRow>& rows,
                               bool include_construction, const std::vector<double>& beta,
                               double sigma_u2, double sigma_e2) {
  const std::size_t n = rows.size();
  std::set<std::string> level_set;
  for (const auto& row : rows) level_set.insert(row.construction);
  std::vector<std::string> levels(level_set.begin(), level_set.end());

  std::vector<double> mu(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    mu[i] = beta[0];
    if (include_construction) {
      for (std::size_t k = 1; k < levels.size(); ++k) {
        if (rows[i].construction == levels[k]) mu[i] += beta[k];
      }
    }
  }

  std::vector<std::vector<double>> cov(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i].participle == rows[j].participle) cov[i][j] += sigma_u2;
      if (i == j) cov[i][j] += sigma_e2;
    }
  }
  // Cholesky
  std::vector<std::vector<double>> chol(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = cov[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= chol[i][k] * chol[j][k];
      if (i == j) {
        chol[i][i] = std::sqrt(sum);
      } else {
        chol[i][j] = sum / chol[j][j];
      }
    }
  }
  double logdet = 0.0;
  for (std::size_t i = 0; i < n; ++i) logdet += 2.0 * std::log(chol[i][i]);
  // solve L z = (y - mu)
  std::vector<double> z(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = rows[i].entropy_bits - mu[i];
    for (std::size_t k = 0; k < i; ++k) sum -= chol[i][k] * z[k];
    z[i] = sum / chol[i][i];
  }
  double quad = 0.0;
  for (double v : z) quad += v * v;
  constexpr double kLog2Pi = 1.8378770664093453;
  return -0.5 * (static_cast<double>(n) * kLog2Pi + logdet + quad);
}

// --- extended-precision entropy oracle ---------------------------------------

inline long double entropy_oracle_bits(const std::map<std::string, int>& counts) {
  long double total = 0.0L;
  for (const auto& [key, c] : counts) total += c;
  long double h = 0.0L;
  for (const auto& [key, c] : counts) {
    if (c <= 0) continue;
    const long double p = static_cast<long double>(c) / total;
    h -= p * (logl(p) / logl(2.0L));
  }
  return h;
}

// --- fixture loading ----------------------------------------------------------

inline std::vector<slotentropy::Sentence> load_fixture_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  return slotentropy::conllu::parse_all(in, "handset");
}

inline std::vector<slotentropy::extract::Match> load_fixture_matches(const std::string& path) {
  return slotentropy::extract::read_matches_tsv(path);
}

inline std::multiset<std::string> match_keys(
    const std::vector<slotentropy::extract::Match>& matches) {
  std::multiset<std::string> out;
  for (const auto& m : matches) out.insert(slotentropy::extract::to_tsv_line(m));
  return out;
}

// Runs the four extractors over the corpus for the given participles, with
// attested participle forms collected from the corpus itself.
inline std::vector<slotentropy::extract::Match> run_extractors(
    const std::vector<slotentropy::Sentence>& corpus, const std::vector<std::string>& participles,
    const slotentropy::extract::Config& config = {}) {
  namespace ex = slotentropy::extract;
  std::map<std::string, std::set<std::string>> attested;
  for (const auto& s : corpus) {
    for (const auto& t : s.tokens) {
      if (slotentropy::tags::effective_tag(t) == "VVN") {
        attested[t.lemma].insert(slotentropy::tags::to_lower(t.form));
      }
    }
  }
  std::vector<ex::Match> out;
  for (const std::string& p : participles) {
    ex::LemmaQueries queries = ex::make_queries(p, config);
    const std::set<std::string>& forms = attested[p];
    for (const auto& s : corpus) {
      for (auto& m : ex::scan_passive(s, queries, config).matches) out.push_back(std::move(m));
      for (auto& m : ex::scan_reduced_relative(s, queries, config).matches)
        out.push_back(std::move(m));
      for (auto& m : ex::scan_nvn(s, queries, config).matches) out.push_back(std::move(m));
      for (auto& m : ex::scan_hyphenated(s, p, forms, config).matches)
        out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace testutil
