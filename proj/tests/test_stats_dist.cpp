#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "slotentropy/stats_dist.hpp"

using slotentropy::stats_dist::chi2_sf;
using slotentropy::stats_dist::normal_two_sided_p;

TEST_CASE("chi2_sf spot values") {
  CHECK(chi2_sf(0.0, 1) == 1.0);
  CHECK(chi2_sf(0.0, 7) == 1.0);
  // 3.841459 is the 95th percentile of chi2(1)
  CHECK(chi2_sf(3.841459, 1) == doctest::Approx(0.05).epsilon(1e-4));
  // the phrasal-only comparison: chi2(1) = 0.0247 -> p ~ .875 (reported .88)
  CHECK(chi2_sf(0.0247, 1) == doctest::Approx(0.8751).epsilon(1e-3));
  // chi2(3) = 260.79 is vanishingly unlikely under the null
  CHECK(chi2_sf(260.79, 3) < 1e-50);
  CHECK(chi2_sf(260.79, 3) > 0.0);
}

TEST_CASE("chi2_sf matches the quadrature oracle to 1e-10") {
  const double xs[] = {0.01, 0.0247, 0.5, 1.0, 2.3, 3.841459, 5.99, 7.3, 11.07, 20.0, 35.0};
  for (int df : {1, 2, 3, 4, 7, 10, 30}) {
    for (double x : xs) {
      const double want = testutil::chi2_sf_quadrature(x, df);
      const double got = chi2_sf(x, df);
      CHECK(std::fabs(got - want) < 1e-10);
    }
  }
}

TEST_CASE("chi2_sf is monotone decreasing and bounded") {
  for (int df : {1, 2, 3, 5, 12}) {
    double last = 1.0;
    for (double x = 0.0; x <= 60.0; x += 0.37) {
      const double p = chi2_sf(x, df);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
      CHECK(p <= last + 1e-15);
      last = p;
    }
  }
}

TEST_CASE("chi2_sf rejects non-positive df") {
  CHECK_THROWS_AS(chi2_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("normal two-sided p-values") {
  CHECK(normal_two_sided_p(0.0) == 1.0);
  CHECK(normal_two_sided_p(1.959964) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(normal_two_sided_p(-1.959964) == doctest::Approx(0.05).epsilon(1e-4));
  CHECK(normal_two_sided_p(15.33) < 1e-20);
}
