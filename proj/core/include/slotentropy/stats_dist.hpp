#pragma once

namespace slotentropy::stats_dist {

// Regularized upper incomplete gamma Q(a, x); series for x < a+1, continued
// fraction otherwise.
double gamma_q(double a, double x);

// Upper-tail probability of the chi-square distribution with df degrees of
// freedom: Q(df/2, x/2). Absolute error <= 1e-10.
double chi2_sf(double x, int df);

// One-sided upper tail of the standard normal.
double normal_sf(double z);

// Two-sided p-value for a standard-normal statistic.
double normal_two_sided_p(double t);

}  // namespace slotentropy::stats_dist
