#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace slotentropy::lmm {

// One observation: entropy for a (participle, construction) cell.
struct LongRow {
  std::string participle;
  std::string construction;
  double entropy_bits = 0.0;
};

struct DesignError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FitQualityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Maximum-likelihood fit of y = X beta + Z u + eps with a single random
// intercept per participle. Treatment coding: the lexicographically first
// construction level is the baseline (which puts "hyphenated" first for the
// four constructions analyzed here).
struct LmmFit {
  std::vector<std::string> coef_names;  // "intercept", then contrast levels
  std::vector<double> beta;
  std::vector<double> se;
  std::vector<double> t;
  double sigma_u2 = 0.0;
  double sigma_e2 = 0.0;
  double loglik = 0.0;
  double lambda = 0.0;  // fitted variance ratio sigma_u2 / sigma_e2
  int n_obs = 0;
  int n_groups = 0;
};

struct LrtResult {
  double chi2 = 0.0;
  int df = 0;
  double p = 1.0;
};

// Profiles beta and sigma_e2 analytically given lambda = sigma_u2/sigma_e2,
// then maximizes the profiled log-likelihood over log(lambda) in [-18, 18]
// by golden-section search (tolerance 1e-10), with the lambda -> 0 boundary
// admissible and reported as sigma_u2 = 0.
//
// required_levels, when non-empty, is the construction level set the design
// must cover; a level absent from the rows is a DesignError.
LmmFit fit_lmm(std::span<const LongRow> rows, bool include_construction,
               const std::vector<std::string>& required_levels = {});

// Profiled log-likelihood at a fixed variance ratio (exposed for optimality
// checks).
double profiled_loglik(std::span<const LongRow> rows, bool include_construction, double lambda,
                       const std::vector<std::string>& required_levels = {});

// chi2 = 2 (loglik_full - loglik_reduced), clamped at zero; both fits must be
// ML fits of nested models on identical rows.
LrtResult lrt(const LmmFit& full, const LmmFit& reduced, int df);

}  // namespace slotentropy::lmm
