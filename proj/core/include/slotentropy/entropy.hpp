#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slotentropy/extract.hpp"

namespace slotentropy::entropy {

// Multiset of normalized alpha keys for one (participle, construction) cell.
struct SlotSample {
  std::string participle;
  extract::Construction kind = extract::Construction::Passive;
  std::map<std::string, int> alphas;

  int total() const;
};

struct EntropyRecord {
  std::string participle;
  extract::Construction kind = extract::Construction::Passive;
  int n = 0;
  double entropy_bits = 0.0;
};

enum class AlphaKey { Lemma, Form };

struct Normalization {
  AlphaKey alpha_key = AlphaKey::Lemma;  // keys are lowercased either way
};

using CellKey = std::pair<std::string, extract::Construction>;

std::map<CellKey, SlotSample> collect(std::span<const extract::Match> matches,
                                      const Normalization& normalization = {});

// A participle survives iff raw >= min_raw and parsed >= min_parsed in every
// one of the four constructions. Missing cells count as zero.
std::set<std::string> apply_inclusion(const std::map<CellKey, std::size_t>& raw_counts,
                                      const std::map<CellKey, std::size_t>& parsed_counts,
                                      std::size_t min_raw = 200, std::size_t min_parsed = 100);

struct InsufficientSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Uniform sample of n token instances without replacement, via a seeded
// shuffle of the deterministically ordered instance list. Same (seed, sample)
// gives an identical result on every platform.
SlotSample downsample(const SlotSample& sample, int n, std::uint64_t seed);

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Plug-in conditional Shannon entropy in bits: H = -sum (c/N) log2 (c/N).
double entropy_bits(const SlotSample& sample);

double max_entropy_bits(int n);

// Per-cell RNG streams, so evaluation order cannot change sampling results.
std::uint64_t cell_seed(std::uint64_t master, std::string_view participle,
                        extract::Construction kind);

// CSV header: participle,construction,n,entropy_bits (entropy to 6 decimals).
void write_entropy_csv(const std::filesystem::path& path,
                       std::span<const EntropyRecord> records);
std::vector<EntropyRecord> read_entropy_csv(const std::filesystem::path& path);

}  // namespace slotentropy::entropy
