#include "slotentropy/permutation.hpp"

#include <cmath>
#include <map>

#include "slotentropy/rng.hpp"

namespace slotentropy::permutation {

namespace {

struct GroupValues {
  std::vector<double> a;
  std::vector<double> b;
};

double mean(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

double group_mean_difference(const std::vector<GroupValues>& groups) {
  double sum = 0.0;
  for (const GroupValues& g : groups) sum += mean(g.a) - mean(g.b);
  return sum / static_cast<double>(groups.size());
}

}  // namespace

Result permutation_test(std::span<const lmm::LongRow> rows, const std::string& level_a,
                        const std::string& level_b, int n_perm, std::uint64_t seed) {
  std::map<std::string, GroupValues> by_group;
  for (const lmm::LongRow& row : rows) {
    if (row.construction == level_a) {
      by_group[row.participle].a.push_back(row.entropy_bits);
    } else if (row.construction == level_b) {
      by_group[row.participle].b.push_back(row.entropy_bits);
    }
  }

  Result result;
  result.n_perm = n_perm;
  result.seed = seed;
  std::vector<GroupValues> groups;
  for (auto& [name, values] : by_group) {
    if (values.a.empty() || values.b.empty()) {
      result.dropped_groups.push_back(name);
      continue;
    }
    groups.push_back(std::move(values));
  }
  if (groups.empty()) {
    result.p = 1.0;
    return result;
  }
  result.groups_used = static_cast<int>(groups.size());
  result.statistic = group_mean_difference(groups);
  const double observed = std::fabs(result.statistic);

  int at_least_as_extreme = 0;
  std::vector<double> pool;
  for (int k = 1; k <= n_perm; ++k) {
    rng::SplitMix64 gen(rng::derive_stream(seed, "perm", static_cast<std::uint64_t>(k)));
    double sum = 0.0;
    for (const GroupValues& g : groups) {
      pool.clear();
      pool.insert(pool.end(), g.a.begin(), g.a.end());
      pool.insert(pool.end(), g.b.begin(), g.b.end());
      rng::shuffle(pool, gen);
      double asum = 0.0;
      for (std::size_t i = 0; i < g.a.size(); ++i) asum += pool[i];
      double bsum = 0.0;
      for (std::size_t i = g.a.size(); i < pool.size(); ++i) bsum += pool[i];
      sum += asum / static_cast<double>(g.a.size()) - bsum / static_cast<double>(g.b.size());
    }
    const double stat = std::fabs(sum / static_cast<double>(groups.size()));
    if (stat >= observed) ++at_least_as_extreme;
  }
  result.p = (1.0 + at_least_as_extreme) / (1.0 + n_perm);
  return result;
}

}  // namespace slotentropy::permutation
