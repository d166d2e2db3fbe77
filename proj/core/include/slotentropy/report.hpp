#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "slotentropy/entropy.hpp"
#include "slotentropy/lmm.hpp"
#include "slotentropy/permutation.hpp"

namespace slotentropy::report {

struct FigRow {
  std::string participle;
  extract::Construction kind = extract::Construction::Passive;
  double entropy_bits = 0.0;
  double max_entropy = 0.0;
};

// Figure 1 layout: grouped by construction (canonical order), participles
// alphabetical within each block.
std::vector<FigRow> fig1_rows(std::span<const entropy::EntropyRecord> records);

// Figure 2 layout: grouped by participle, ordered by mean compound entropy
// ascending (ties lexicographic); constructions in canonical order within
// each block.
std::vector<FigRow> fig2_rows(std::span<const entropy::EntropyRecord> records);

void write_fig_csv(const std::filesystem::path& path, std::span<const FigRow> rows,
                   bool construction_first);

// Minimal static strip charts; the CSVs are the primary artifact.
void write_fig1_svg(const std::filesystem::path& path, std::span<const FigRow> rows);
void write_fig2_svg(const std::filesystem::path& path, std::span<const FigRow> rows);

struct StatsBundle {
  lmm::LmmFit model;
  lmm::LrtResult lrt_construction;
  std::optional<lmm::LmmFit> phrasal_model;
  std::optional<lmm::LrtResult> lrt_phrasal_only;
  std::optional<permutation::Result> permutation;
};

// Fits the full and reduced models, the phrasal-only pair, and the
// permutation cross-check from one set of long rows.
StatsBundle compute_stats(std::span<const lmm::LongRow> rows, int n_perm, std::uint64_t seed);

void write_stats_json(const std::filesystem::path& path, const StatsBundle& stats);

std::vector<lmm::LongRow> rows_from_records(std::span<const entropy::EntropyRecord> records);

}  // namespace slotentropy::report
