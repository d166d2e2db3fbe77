#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "slotentropy/lmm.hpp"

namespace slotentropy::permutation {

struct Result {
  double p = 1.0;
  double statistic = 0.0;
  int n_perm = 0;
  std::uint64_t seed = 0;
  int groups_used = 0;
  std::vector<std::string> dropped_groups;  // groups missing one of the levels
};

// Within-participle permutation test of the mean entropy difference between
// two construction levels. Labels are permuted independently within each
// group; p = (1 + #{|stat_perm| >= |stat_obs|}) / (1 + n_perm).
Result permutation_test(std::span<const lmm::LongRow> rows, const std::string& level_a,
                        const std::string& level_b, int n_perm, std::uint64_t seed);

}  // namespace slotentropy::permutation
