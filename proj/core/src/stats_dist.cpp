#include "slotentropy/stats_dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slotentropy::stats_dist {

namespace {

constexpr int kMaxIterations = 10000;
const double kEps = std::numeric_limits<double>::epsilon();
const double kFpMin = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

// Lower incomplete gamma P(a,x) by series expansion, for x < a+1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < kMaxIterations; ++i) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("incomplete gamma series failed to converge");
}

// Upper incomplete gamma Q(a,x) by modified Lentz continued fraction,
// for x >= a+1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kFpMin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    c = b + an / c;
    if (std::fabs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw std::runtime_error("incomplete gamma continued fraction failed to converge");
}

}  // namespace

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0 || std::isnan(a) || std::isnan(x)) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
  if (df < 1) throw std::invalid_argument("chi2_sf: df must be positive");
  if (x <= 0.0) return 1.0;
  const double q = gamma_q(0.5 * df, 0.5 * x);
  if (q < 0.0) return 0.0;
  if (q > 1.0) return 1.0;
  return q;
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_two_sided_p(double t) { return std::erfc(std::fabs(t) / std::sqrt(2.0)); }

}  // namespace slotentropy::stats_dist
