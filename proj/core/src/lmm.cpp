#include "slotentropy/lmm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "slotentropy/stats_dist.hpp"

namespace slotentropy::lmm {

namespace {

// Profile evaluations accumulate in long double: the golden-section bracket
// decisions near the optimum compare nearly equal likelihoods, and double
// rounding there is enough to knock the fitted ratio around by ~1e-8.
using Real = long double;
using Matrix = std::vector<std::vector<Real>>;

struct Design {
  std::vector<std::string> levels;  // sorted; levels[0] is the baseline
  std::vector<Real> y;
  std::vector<std::vector<Real>> x;      // n rows, p columns
  std::vector<std::vector<int>> groups;  // row indices per group, group-sorted
  int p = 0;
};

Design build_design(std::span<const LongRow> rows, bool include_construction,
                    const std::vector<std::string>& required_levels, Real shift, Real scale) {
  if (rows.empty()) throw InputError("no rows");

  std::set<std::string> level_set;
  std::map<std::string, std::vector<int>> group_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    level_set.insert(rows[i].construction);
    group_rows[rows[i].participle].push_back(static_cast<int>(i));
  }
  if (group_rows.size() < 2) throw InputError("need at least 2 participle groups");

  Design d;
  if (!required_levels.empty()) {
    std::set<std::string> required(required_levels.begin(), required_levels.end());
    for (const std::string& level : required) {
      if (level_set.find(level) == level_set.end()) {
        throw DesignError("construction level '" + level + "' absent from all rows");
      }
    }
    for (const std::string& level : level_set) {
      if (required.find(level) == required.end()) {
        throw DesignError("rows contain unexpected construction level '" + level + "'");
      }
    }
    d.levels.assign(required.begin(), required.end());
  } else {
    d.levels.assign(level_set.begin(), level_set.end());
  }

  if (include_construction) {
    if (d.levels.size() < 2) {
      throw DesignError("construction term needs at least 2 levels");
    }
    for (const auto& [group, indices] : group_rows) {
      if (indices.size() < 2) {
        throw InputError("group '" + group + "' has fewer than 2 rows");
      }
    }
  }

  d.p = include_construction ? static_cast<int>(d.levels.size()) : 1;
  d.y.reserve(rows.size());
  d.x.reserve(rows.size());
  for (const LongRow& row : rows) {
    std::vector<Real> xrow(static_cast<std::size_t>(d.p), 0.0L);
    xrow[0] = 1.0L;
    if (include_construction) {
      for (std::size_t k = 1; k < d.levels.size(); ++k) {
        if (row.construction == d.levels[k]) xrow[k] = 1.0L;
      }
    }
    d.x.push_back(std::move(xrow));
    d.y.push_back((static_cast<Real>(row.entropy_bits) - shift) / scale);
  }
  for (auto& [group, indices] : group_rows) d.groups.push_back(std::move(indices));
  return d;
}

// Gauss-Jordan inverse with partial pivoting; false when singular.
bool invert(Matrix a, Matrix& inv) {
  const std::size_t n = a.size();
  inv.assign(n, std::vector<Real>(n, 0.0L));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0L;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (fabsl(a[r][col]) > fabsl(a[pivot][col])) pivot = r;
    }
    if (fabsl(a[pivot][col]) < 1e-12L) return false;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Real s = a[col][col];
    for (std::size_t c = 0; c < n; ++c) {
      a[col][c] /= s;
      inv[col][c] /= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Real factor = a[r][col];
      if (factor == 0.0L) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a[r][c] -= factor * a[col][c];
        inv[r][c] -= factor * inv[col][c];
      }
    }
  }
  return true;
}

struct Profile {
  Real loglik = 0.0L;
  std::vector<Real> beta;
  Real sigma_e2 = 0.0L;
  Matrix xtvx_inv;  // (X' V^-1 X)^-1 at this lambda
};

// GLS with V_g = I + lambda 1 1': V_g^-1 = I - w_g 1 1', w_g = lambda/(1+lambda n_g),
// log det V_g = log(1 + lambda n_g). Profiles beta and sigma_e2 in closed form.
Profile profile_at(const Design& d, Real lambda) {
  const int p = d.p;
  const int n = static_cast<int>(d.y.size());
  Matrix a(static_cast<std::size_t>(p), std::vector<Real>(static_cast<std::size_t>(p), 0.0L));
  std::vector<Real> b(static_cast<std::size_t>(p), 0.0L);
  Real logdet = 0.0L;

  for (const auto& rows : d.groups) {
    const Real ng = static_cast<Real>(rows.size());
    const Real w = lambda / (1.0L + lambda * ng);
    logdet += logl(1.0L + lambda * ng);
    std::vector<Real> xsum(static_cast<std::size_t>(p), 0.0L);
    Real ysum = 0.0L;
    for (int i : rows) {
      const auto& xi = d.x[static_cast<std::size_t>(i)];
      const Real yi = d.y[static_cast<std::size_t>(i)];
      ysum += yi;
      for (int r = 0; r < p; ++r) {
        xsum[static_cast<std::size_t>(r)] += xi[static_cast<std::size_t>(r)];
        b[static_cast<std::size_t>(r)] += xi[static_cast<std::size_t>(r)] * yi;
        for (int c = r; c < p; ++c) {
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] +=
              xi[static_cast<std::size_t>(r)] * xi[static_cast<std::size_t>(c)];
        }
      }
    }
    for (int r = 0; r < p; ++r) {
      b[static_cast<std::size_t>(r)] -= w * xsum[static_cast<std::size_t>(r)] * ysum;
      for (int c = r; c < p; ++c) {
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            w * xsum[static_cast<std::size_t>(r)] * xsum[static_cast<std::size_t>(c)];
      }
    }
  }
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < r; ++c) {
      a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
          a[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
    }
  }

  Profile result;
  if (!invert(a, result.xtvx_inv)) {
    throw DesignError("singular design matrix");
  }
  result.beta.assign(static_cast<std::size_t>(p), 0.0L);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) {
      result.beta[static_cast<std::size_t>(r)] +=
          result.xtvx_inv[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
          b[static_cast<std::size_t>(c)];
    }
  }

  Real rss = 0.0L;
  for (const auto& rows : d.groups) {
    const Real ng = static_cast<Real>(rows.size());
    const Real w = lambda / (1.0L + lambda * ng);
    Real rsum = 0.0L;
    Real rsq = 0.0L;
    for (int i : rows) {
      Real r = d.y[static_cast<std::size_t>(i)];
      const auto& xi = d.x[static_cast<std::size_t>(i)];
      for (int c = 0; c < p; ++c) {
        r -= xi[static_cast<std::size_t>(c)] * result.beta[static_cast<std::size_t>(c)];
      }
      rsum += r;
      rsq += r * r;
    }
    rss += rsq - w * rsum * rsum;
  }

  result.sigma_e2 = std::max(rss / n, 1e-300L);
  constexpr Real kLog2Pi = 1.837877066409345483560659472811L;
  result.loglik = -0.5L * n * (kLog2Pi + 1.0L) - 0.5L * n * logl(result.sigma_e2) -
                  0.5L * logdet;
  return result;
}

// d loglik / d lambda at the profiled (beta, sigma_e2); by the envelope
// theorem the partial derivative in lambda is the total one.
Real score_at(const Design& d, Real lambda) {
  const Profile p = profile_at(d, lambda);
  Real trace_term = 0.0L;
  Real quad_term = 0.0L;
  for (const auto& rows : d.groups) {
    const Real ng = static_cast<Real>(rows.size());
    const Real denom = 1.0L + lambda * ng;
    Real rsum = 0.0L;
    for (int i : rows) {
      Real r = d.y[static_cast<std::size_t>(i)];
      const auto& xi = d.x[static_cast<std::size_t>(i)];
      for (int c = 0; c < d.p; ++c) {
        r -= xi[static_cast<std::size_t>(c)] * p.beta[static_cast<std::size_t>(c)];
      }
      rsum += r;
    }
    trace_term += ng / denom;
    quad_term += rsum * rsum / (denom * denom);
  }
  return -0.5L * trace_term + quad_term / (2.0L * p.sigma_e2);
}

// Refines the located maximum by bisecting the score inside a small window.
// Comparing near-equal likelihoods resolves the ratio only to the square root
// of the arithmetic noise; the score changes sign linearly through the
// optimum, so bisection pins it far more tightly and keeps the fit invariant
// under response shifts and rescalings.
Real polish_by_score(const Design& d, Real x) {
  constexpr Real kWindow = 1e-3L;
  Real lo = std::max(x - kWindow, -18.0L);
  Real hi = std::min(x + kWindow, 18.0L);
  Real score_lo = score_at(d, expl(lo));
  Real score_hi = score_at(d, expl(hi));
  if (!(score_lo > 0.0L) || !(score_hi < 0.0L)) return x;  // no interior root here
  for (int i = 0; i < 80; ++i) {
    const Real mid = 0.5L * (lo + hi);
    if (score_at(d, expl(mid)) > 0.0L) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5L * (lo + hi);
}

// Golden-section maximization of the profiled log-likelihood over
// x = log(lambda) in [lo, hi].
Real golden_section(const Design& d, Real lo, Real hi, Real tol) {
  const Real invphi = (sqrtl(5.0L) - 1.0L) / 2.0L;
  const Real invphi2 = invphi * invphi;
  Real a = lo;
  Real b = hi;
  Real h = b - a;
  Real c = a + invphi2 * h;
  Real e = a + invphi * h;
  Real fc = profile_at(d, expl(c)).loglik;
  Real fe = profile_at(d, expl(e)).loglik;
  while (h > tol) {
    if (fc > fe) {
      b = e;
      e = c;
      fe = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = profile_at(d, expl(c)).loglik;
    } else {
      a = c;
      c = e;
      fc = fe;
      h = b - a;
      e = a + invphi * h;
      fe = profile_at(d, expl(e)).loglik;
    }
  }
  return 0.5L * (a + b);
}

struct Standardizer {
  Real shift = 0.0L;
  Real scale = 1.0L;
};

// Fitting on (y - mean)/sd keeps the profile search identically conditioned
// under shifts and rescalings of the response.
Standardizer standardizer_for(std::span<const LongRow> rows) {
  Real sum = 0.0L;
  for (const LongRow& r : rows) sum += static_cast<Real>(r.entropy_bits);
  const Real mean = sum / static_cast<Real>(rows.size());
  Real ss = 0.0L;
  for (const LongRow& r : rows) {
    const Real d = static_cast<Real>(r.entropy_bits) - mean;
    ss += d * d;
  }
  const Real sd = sqrtl(ss / static_cast<Real>(rows.size()));
  Standardizer s;
  s.shift = mean;
  s.scale = sd > 0.0L ? sd : 1.0L;
  return s;
}

}  // namespace

double profiled_loglik(std::span<const LongRow> rows, bool include_construction, double lambda,
                       const std::vector<std::string>& required_levels) {
  Design d = build_design(rows, include_construction, required_levels, 0.0L, 1.0L);
  return static_cast<double>(profile_at(d, static_cast<Real>(lambda)).loglik);
}

LmmFit fit_lmm(std::span<const LongRow> rows, bool include_construction,
               const std::vector<std::string>& required_levels) {
  const Standardizer standard = standardizer_for(rows);
  Design d = build_design(rows, include_construction, required_levels, standard.shift,
                          standard.scale);

  const Real x_opt = polish_by_score(d, golden_section(d, -18.0L, 18.0L, 1e-10L));
  Real lambda = expl(x_opt);
  Profile best = profile_at(d, lambda);

  // the sigma_u2 = 0 boundary is admissible; report it exactly when it is at
  // least as good as the interior optimum
  Profile at_zero = profile_at(d, 0.0L);
  if (at_zero.loglik >= best.loglik - 1e-10L) {
    lambda = 0.0L;
    best = std::move(at_zero);
  }

  const Real scale = standard.scale;
  const int n = static_cast<int>(d.y.size());

  LmmFit fit;
  fit.coef_names.push_back("intercept");
  if (include_construction) {
    for (std::size_t k = 1; k < d.levels.size(); ++k) fit.coef_names.push_back(d.levels[k]);
  }
  fit.beta.resize(best.beta.size());
  fit.se.resize(best.beta.size());
  fit.t.resize(best.beta.size());
  for (std::size_t k = 0; k < best.beta.size(); ++k) {
    const Real beta = scale * best.beta[k] + (k == 0 ? standard.shift : 0.0L);
    const Real se = scale * sqrtl(best.sigma_e2 * best.xtvx_inv[k][k]);
    fit.beta[k] = static_cast<double>(beta);
    fit.se[k] = static_cast<double>(se);
    fit.t[k] = se > 0.0L ? static_cast<double>(beta / se) : 0.0;
  }
  fit.sigma_e2 = static_cast<double>(scale * scale * best.sigma_e2);
  fit.sigma_u2 = static_cast<double>(scale * scale * lambda * best.sigma_e2);
  fit.lambda = static_cast<double>(lambda);
  fit.loglik = static_cast<double>(best.loglik - static_cast<Real>(n) * logl(scale));
  fit.n_obs = n;
  fit.n_groups = static_cast<int>(d.groups.size());
  return fit;
}

LrtResult lrt(const LmmFit& full, const LmmFit& reduced, int df) {
  constexpr double kTolerance = 1e-6;
  double chi2 = 2.0 * (full.loglik - reduced.loglik);
  if (chi2 < -kTolerance) {
    throw FitQualityError("full model log-likelihood below reduced model by " +
                          std::to_string(-chi2 / 2.0));
  }
  chi2 = std::max(chi2, 0.0);
  return LrtResult{chi2, df, stats_dist::chi2_sf(chi2, df)};
}

}  // namespace slotentropy::lmm
