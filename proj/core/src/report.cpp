#include "slotentropy/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "slotentropy/errors.hpp"
#include "slotentropy/stats_dist.hpp"

namespace slotentropy::report {

namespace {

using extract::Construction;

int common_n(std::span<const entropy::EntropyRecord> records) {
  int n = 0;
  for (const entropy::EntropyRecord& r : records) {
    if (n == 0) n = r.n;
    if (r.n != n) throw ConfigError("entropy records are not comparable: mixed sample sizes");
  }
  return n;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

constexpr int kConstructionRank[] = {2, 3, 1, 0};  // passive, rr, nvn, hyphenated

int rank(Construction c) { return kConstructionRank[static_cast<int>(c)]; }

}  // namespace

std::vector<FigRow> fig1_rows(std::span<const entropy::EntropyRecord> records) {
  const int n = common_n(records);
  const double max_h = n > 0 ? entropy::max_entropy_bits(n) : 0.0;
  std::vector<FigRow> rows;
  rows.reserve(records.size());
  for (const entropy::EntropyRecord& r : records) {
    rows.push_back({r.participle, r.kind, r.entropy_bits, max_h});
  }
  std::sort(rows.begin(), rows.end(), [](const FigRow& a, const FigRow& b) {
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    return a.participle < b.participle;
  });
  return rows;
}

std::vector<FigRow> fig2_rows(std::span<const entropy::EntropyRecord> records) {
  const int n = common_n(records);
  const double max_h = n > 0 ? entropy::max_entropy_bits(n) : 0.0;

  std::map<std::string, std::pair<double, int>> compound;  // sum, count
  for (const entropy::EntropyRecord& r : records) {
    if (r.kind == Construction::Hyphenated || r.kind == Construction::Nvn) {
      auto& [sum, count] = compound[r.participle];
      sum += r.entropy_bits;
      ++count;
    }
  }
  auto mean_compound = [&](const std::string& p) {
    auto it = compound.find(p);
    if (it == compound.end() || it->second.second == 0)
      return std::numeric_limits<double>::infinity();
    return it->second.first / it->second.second;
  };

  std::vector<FigRow> rows;
  rows.reserve(records.size());
  for (const entropy::EntropyRecord& r : records) {
    rows.push_back({r.participle, r.kind, r.entropy_bits, max_h});
  }
  std::sort(rows.begin(), rows.end(), [&](const FigRow& a, const FigRow& b) {
    const double ma = mean_compound(a.participle);
    const double mb = mean_compound(b.participle);
    if (ma != mb) return ma < mb;
    if (a.participle != b.participle) return a.participle < b.participle;
    return rank(a.kind) < rank(b.kind);
  });
  return rows;
}

void write_fig_csv(const std::filesystem::path& path, std::span<const FigRow> rows,
                   bool construction_first) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  if (construction_first) {
    out << "construction,participle,entropy_bits,max_entropy\n";
    for (const FigRow& r : rows) {
      out << extract::name(r.kind) << ',' << r.participle << ',' << fmt(r.entropy_bits) << ','
          << fmt(r.max_entropy) << '\n';
    }
  } else {
    out << "participle,construction,entropy_bits,max_entropy\n";
    for (const FigRow& r : rows) {
      out << r.participle << ',' << extract::name(r.kind) << ',' << fmt(r.entropy_bits) << ','
          << fmt(r.max_entropy) << '\n';
    }
  }
}

namespace {

// shared strip-chart scaffolding: categories on x, entropy on y, a horizontal
// line at the entropy ceiling
void write_strip_svg(const std::filesystem::path& path,
                     const std::vector<std::string>& categories,
                     const std::vector<std::pair<int, double>>& points, double max_entropy,
                     const std::string& title) {
  const double width = std::max<double>(480.0, 60.0 + 26.0 * categories.size());
  const double height = 320.0;
  const double left = 50.0, right = width - 14.0, top = 30.0, bottom = height - 60.0;
  const double ymax = std::max(max_entropy * 1.08, 1.0);

  auto xpos = [&](int cat) {
    if (categories.size() <= 1) return (left + right) / 2.0;
    return left + (right - left) * (cat + 0.5) / static_cast<double>(categories.size());
  };
  auto ypos = [&](double h) { return bottom - (bottom - top) * (h / ymax); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"18\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"13\">"
      << title << "</text>\n";
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(bottom) << "\" x2=\"" << num(right)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(top) << "\" x2=\"" << num(left)
      << "\" y2=\"" << num(bottom) << "\" stroke=\"black\"/>\n";
  // entropy ceiling
  out << "<line x1=\"" << num(left) << "\" y1=\"" << num(ypos(max_entropy)) << "\" x2=\""
      << num(right) << "\" y2=\"" << num(ypos(max_entropy))
      << "\" stroke=\"blue\" stroke-dasharray=\"4 3\"/>\n";
  out << "<text x=\"" << num(right) << "\" y=\"" << num(ypos(max_entropy) - 4)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\" fill=\"blue\">max "
      << num(max_entropy) << "</text>\n";
  for (const auto& [cat, h] : points) {
    out << "<circle cx=\"" << num(xpos(cat)) << "\" cy=\"" << num(ypos(h))
        << "\" r=\"2.5\" fill=\"#444\" fill-opacity=\"0.55\"/>\n";
  }
  for (std::size_t i = 0; i < categories.size(); ++i) {
    out << "<text x=\"" << num(xpos(static_cast<int>(i))) << "\" y=\"" << num(bottom + 12)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"9\" transform=\"rotate(-45 "
        << num(xpos(static_cast<int>(i))) << " " << num(bottom + 12) << ")\">" << categories[i]
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace

void write_fig1_svg(const std::filesystem::path& path, std::span<const FigRow> rows) {
  std::vector<std::string> categories;
  std::vector<std::pair<int, double>> points;
  double max_h = 0.0;
  for (const FigRow& r : rows) {
    const std::string label{extract::name(r.kind)};
    auto it = std::find(categories.begin(), categories.end(), label);
    int idx;
    if (it == categories.end()) {
      categories.push_back(label);
      idx = static_cast<int>(categories.size()) - 1;
    } else {
      idx = static_cast<int>(it - categories.begin());
    }
    points.emplace_back(idx, r.entropy_bits);
    max_h = r.max_entropy;
  }
  write_strip_svg(path, categories, points, max_h, "Slot entropy by construction");
}

void write_fig2_svg(const std::filesystem::path& path, std::span<const FigRow> rows) {
  std::vector<std::string> categories;
  std::vector<std::pair<int, double>> points;
  double max_h = 0.0;
  for (const FigRow& r : rows) {
    auto it = std::find(categories.begin(), categories.end(), r.participle);
    int idx;
    if (it == categories.end()) {
      categories.push_back(r.participle);
      idx = static_cast<int>(categories.size()) - 1;
    } else {
      idx = static_cast<int>(it - categories.begin());
    }
    points.emplace_back(idx, r.entropy_bits);
    max_h = r.max_entropy;
  }
  write_strip_svg(path, categories, points, max_h, "Slot entropy by participle");
}

std::vector<lmm::LongRow> rows_from_records(std::span<const entropy::EntropyRecord> records) {
  std::vector<lmm::LongRow> rows;
  rows.reserve(records.size());
  for (const entropy::EntropyRecord& r : records) {
    rows.push_back({r.participle, std::string(extract::name(r.kind)), r.entropy_bits});
  }
  return rows;
}

StatsBundle compute_stats(std::span<const lmm::LongRow> rows, int n_perm, std::uint64_t seed) {
  StatsBundle bundle;
  std::vector<std::string> levels;
  {
    std::set<std::string> seen;
    for (const lmm::LongRow& r : rows) seen.insert(r.construction);
    levels.assign(seen.begin(), seen.end());
  }
  bundle.model = lmm::fit_lmm(rows, true, levels);
  lmm::LmmFit reduced = lmm::fit_lmm(rows, false, levels);
  bundle.lrt_construction =
      lmm::lrt(bundle.model, reduced, static_cast<int>(levels.size()) - 1);

  const std::string passive{extract::name(extract::Construction::Passive)};
  const std::string rr{extract::name(extract::Construction::ReducedRelative)};
  std::vector<lmm::LongRow> phrasal;
  for (const lmm::LongRow& r : rows) {
    if (r.construction == passive || r.construction == rr) phrasal.push_back(r);
  }
  std::map<std::string, int> phrasal_per_group;
  for (const lmm::LongRow& r : phrasal) ++phrasal_per_group[r.participle];
  const bool phrasal_ok =
      !phrasal_per_group.empty() &&
      std::all_of(phrasal_per_group.begin(), phrasal_per_group.end(),
                  [](const auto& kv) { return kv.second >= 2; }) &&
      phrasal_per_group.size() >= 2;
  if (phrasal_ok) {
    bundle.phrasal_model = lmm::fit_lmm(phrasal, true, {passive, rr});
    lmm::LmmFit phrasal_reduced = lmm::fit_lmm(phrasal, false, {passive, rr});
    bundle.lrt_phrasal_only = lmm::lrt(*bundle.phrasal_model, phrasal_reduced, 1);
    bundle.permutation = permutation::permutation_test(phrasal, passive, rr, n_perm, seed);
  }
  return bundle;
}

namespace {

nlohmann::json fit_to_json(const lmm::LmmFit& fit) {
  nlohmann::json beta, se, t, p;
  for (std::size_t k = 0; k < fit.coef_names.size(); ++k) {
    beta[fit.coef_names[k]] = fit.beta[k];
    se[fit.coef_names[k]] = fit.se[k];
    t[fit.coef_names[k]] = fit.t[k];
    // normal approximation; see README
    p[fit.coef_names[k]] = stats_dist::normal_two_sided_p(fit.t[k]);
  }
  return nlohmann::json{{"beta", beta},
                        {"se", se},
                        {"t", t},
                        {"p", p},
                        {"sigma_u2", fit.sigma_u2},
                        {"sigma_e2", fit.sigma_e2},
                        {"loglik", fit.loglik},
                        {"n_obs", fit.n_obs},
                        {"n_groups", fit.n_groups}};
}

nlohmann::json lrt_to_json(const lmm::LrtResult& r) {
  return nlohmann::json{{"chi2", r.chi2}, {"df", r.df}, {"p", r.p}};
}

}  // namespace

void write_stats_json(const std::filesystem::path& path, const StatsBundle& stats) {
  nlohmann::json j;
  j["model"] = fit_to_json(stats.model);
  j["lrt_construction"] = lrt_to_json(stats.lrt_construction);
  if (stats.lrt_phrasal_only) j["lrt_phrasal_only"] = lrt_to_json(*stats.lrt_phrasal_only);
  if (stats.phrasal_model) j["phrasal_model"] = fit_to_json(*stats.phrasal_model);
  if (stats.permutation) {
    const permutation::Result& perm = *stats.permutation;
    j["permutation"] = nlohmann::json{{"contrast", {"passive", "reduced_relative"}},
                                      {"statistic", perm.statistic},
                                      {"p", perm.p},
                                      {"n_perm", perm.n_perm},
                                      {"seed", perm.seed},
                                      {"groups_used", perm.groups_used},
                                      {"groups_dropped", perm.dropped_groups}};
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace slotentropy::report
