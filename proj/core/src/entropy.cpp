#include "slotentropy/entropy.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "slotentropy/errors.hpp"
#include "slotentropy/rng.hpp"
#include "slotentropy/tags.hpp"

namespace slotentropy::entropy {

int SlotSample::total() const {
  int sum = 0;
  for (const auto& [key, count] : alphas) sum += count;
  return sum;
}

std::map<CellKey, SlotSample> collect(std::span<const extract::Match> matches,
                                      const Normalization& normalization) {
  std::map<CellKey, SlotSample> out;
  for (const extract::Match& m : matches) {
    const std::string& raw =
        normalization.alpha_key == AlphaKey::Lemma ? m.alpha_lemma : m.alpha_form;
    const std::string key = tags::to_lower(raw);
    CellKey cell{m.participle_lemma, m.kind};
    auto [it, inserted] = out.try_emplace(cell);
    if (inserted) {
      it->second.participle = m.participle_lemma;
      it->second.kind = m.kind;
    }
    ++it->second.alphas[key];
  }
  return out;
}

std::set<std::string> apply_inclusion(const std::map<CellKey, std::size_t>& raw_counts,
                                      const std::map<CellKey, std::size_t>& parsed_counts,
                                      std::size_t min_raw, std::size_t min_parsed) {
  std::set<std::string> participles;
  for (const auto& [cell, count] : raw_counts) participles.insert(cell.first);
  for (const auto& [cell, count] : parsed_counts) participles.insert(cell.first);

  auto count_of = [](const std::map<CellKey, std::size_t>& counts, const CellKey& cell) {
    auto it = counts.find(cell);
    return it == counts.end() ? std::size_t{0} : it->second;
  };

  std::set<std::string> included;
  for (const std::string& p : participles) {
    bool ok = true;
    for (extract::Construction kind : extract::kAllConstructions) {
      CellKey cell{p, kind};
      if (count_of(raw_counts, cell) < min_raw || count_of(parsed_counts, cell) < min_parsed) {
        ok = false;
        break;
      }
    }
    if (ok) included.insert(p);
  }
  return included;
}

SlotSample downsample(const SlotSample& sample, int n, std::uint64_t seed) {
  const int total = sample.total();
  if (total < n) {
    throw InsufficientSampleError("cell (" + sample.participle + ", " +
                                  std::string(extract::name(sample.kind)) + ") has " +
                                  std::to_string(total) + " tokens, needs " + std::to_string(n));
  }
  // instance list ordered by alpha key, then occurrence index (map order)
  std::vector<const std::string*> instances;
  instances.reserve(static_cast<std::size_t>(total));
  for (const auto& [key, count] : sample.alphas) {
    for (int i = 0; i < count; ++i) instances.push_back(&key);
  }
  rng::SplitMix64 gen(seed);
  rng::shuffle(instances, gen);

  SlotSample out;
  out.participle = sample.participle;
  out.kind = sample.kind;
  for (int i = 0; i < n; ++i) ++out.alphas[*instances[static_cast<std::size_t>(i)]];
  return out;
}

double entropy_bits(const SlotSample& sample) {
  const int total = sample.total();
  if (total < 1) throw DomainError("entropy of an empty sample");
  double h = 0.0;
  for (const auto& [key, count] : sample.alphas) {
    if (count <= 0) continue;
    const double p = static_cast<double>(count) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

double max_entropy_bits(int n) {
  if (n < 1) throw DomainError("max entropy needs a positive sample size");
  return std::log2(static_cast<double>(n));
}

std::uint64_t cell_seed(std::uint64_t master, std::string_view participle,
                        extract::Construction kind) {
  std::string label(participle);
  label += '\x1f';
  label += extract::name(kind);
  return rng::derive_stream(master, label);
}

void write_entropy_csv(const std::filesystem::path& path,
                       std::span<const EntropyRecord> records) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open " + path.string() + " for writing");
  out << "participle,construction,n,entropy_bits\n";
  char buf[64];
  for (const EntropyRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.6f", r.entropy_bits);
    out << r.participle << ',' << extract::name(r.kind) << ',' << r.n << ',' << buf << '\n';
  }
}

std::vector<EntropyRecord> read_entropy_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "participle,construction,n,entropy_bits") {
    throw ConfigError(path.string() + ": missing entropy CSV header");
  }
  std::vector<EntropyRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        fields.push_back(line.substr(start, i - start));
        start = i + 1;
      }
    }
    if (fields.size() != 4) throw ConfigError(path.string() + ": malformed row '" + line + "'");
    auto kind = extract::construction_from_name(fields[1]);
    if (!kind) throw ConfigError(path.string() + ": unknown construction '" + fields[1] + "'");
    EntropyRecord r;
    r.participle = fields[0];
    r.kind = *kind;
    try {
      r.n = std::stoi(fields[2]);
      r.entropy_bits = std::stod(fields[3]);
    } catch (const std::exception&) {
      throw ConfigError(path.string() + ": malformed row '" + line + "'");
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace slotentropy::entropy
