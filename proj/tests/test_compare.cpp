#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "entdist/compare.hpp"

using entdist::compare::chain_check;
using entdist::compare::ComparisonPoint;
using entdist::compare::crossover_n;
using entdist::compare::ebit_probability;
using entdist::compare::efficiency_ratio;
using entdist::compare::evaluate_point;
using entdist::compare::survival_probability;

namespace {

// Direct evaluation of the ratio, independent of the log-space route.
// Usable while (eta/2)^N and x^(2^N - 1) stay inside double range.
double direct_ratio(double eta, double lambda, int n) {
  const double x = eta * lambda * lambda;
  const double exponent = std::exp2(n) - 1.0;
  return std::pow(eta / 2.0, n) * std::pow(1.0 / x, exponent);
}

}  // namespace

TEST_CASE("ebit probability") {
  CHECK(ebit_probability(0.5, 1) == 0.5);
  CHECK(ebit_probability(1.0, 7) == 1.0);
  CHECK(ebit_probability(0.5, 3) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK_THROWS_AS(ebit_probability(1.2, 1), std::invalid_argument);
  CHECK_THROWS_AS(ebit_probability(0.5, 0), std::invalid_argument);
}

TEST_CASE("twin-beam survival probability") {
  CHECK(survival_probability(0.5, 0.5) ==
        doctest::Approx(6.0 / 7.0).epsilon(1e-15));
  CHECK(survival_probability(1.0, 0.75) == 1.0);
  CHECK(survival_probability(0.25, 0.75) ==
        doctest::Approx(0.4375 / 0.859375).epsilon(1e-15));
  CHECK(survival_probability(0.7, 0.0) == 1.0);
  CHECK_THROWS_AS(survival_probability(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("the reference point eta = lambda = 1/2, N = 1") {
  const ComparisonPoint p = evaluate_point(0.5, 0.5, 1);
  CHECK(p.m == 2);
  CHECK(std::abs(p.p_b - 0.5) < 1e-12);
  CHECK(std::abs(p.q - 6.0 / 7.0) < 1e-12);
  CHECK(std::abs(p.p_star - 0.25) < 1e-12);
  CHECK(std::abs(p.p_prime - 0.25) < 1e-12);
  CHECK(std::abs(p.p_c - 3.0 / 14.0) < 1e-12);
  CHECK(std::abs(p.r - 2.0) < 1e-12);
  CHECK(p.ln_r == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // No re-derivation drift between modules.
  CHECK(p.p_c == p.q * p.p_star);
}

TEST_CASE("evaluate_point across regimes") {
  SUBCASE("lossless link") {
    const ComparisonPoint p = evaluate_point(1.0, 0.5, 1);
    CHECK(p.p_b == 1.0);
    CHECK(p.q == 1.0);
  }

  SUBCASE("strong gain and moderate loss") {
    const ComparisonPoint p = evaluate_point(0.75, 0.75, 1);
    // x = 0.421875; terms {1, 0.84375}.
    CHECK(p.p_star == doctest::Approx(0.84375).epsilon(1e-15));
    CHECK(p.q == doctest::Approx(0.4375 / 0.578125).epsilon(1e-14));
    CHECK(p.p_c == doctest::Approx(0.6385135135135135).epsilon(1e-12));
    CHECK(p.r == doctest::Approx(8.0 / 9.0).epsilon(1e-12));
    // r < 1 here, yet the photon scheme still wins on raw probability.
    CHECK(p.r < 1.0);
    CHECK(p.p_b > p.p_c);
    CHECK(p.p_b / p.p_c == doctest::Approx(1.1746).epsilon(1e-4));
  }

  SUBCASE("vacuum source yields zero conversion probability") {
    const ComparisonPoint p = evaluate_point(0.6, 0.0, 2);
    CHECK(p.p_c == 0.0);
    CHECK(std::isinf(p.r));
    CHECK(p.ln_r > 0.0);
  }

  SUBCASE("dead link with vacuum source has an undefined ratio") {
    const ComparisonPoint p = evaluate_point(0.0, 0.0, 1);
    CHECK(p.p_b == 0.0);
    CHECK(std::isnan(p.r));
  }

  SUBCASE("the N cap is a validated error, not saturation") {
    CHECK_NOTHROW(evaluate_point(0.5, 0.5, 30));
    CHECK_THROWS_WITH_AS(evaluate_point(0.5, 0.5, 31),
                         doctest::Contains("exceeds the supported maximum"),
                         std::invalid_argument);
    CHECK_THROWS_AS(evaluate_point(0.5, 0.5, 0), std::invalid_argument);
  }

  SUBCASE("large N runs through the closed-form fast path") {
    const ComparisonPoint p = evaluate_point(0.5, 0.5, 30);
    CHECK(p.m == (std::int64_t{1} << 30));
    CHECK(p.p_star == 0.0);  // underflow: the target is hopelessly large
    CHECK(p.p_c == 0.0);
    CHECK(std::isfinite(p.ln_r));
    CHECK(p.ln_r > 0.0);
  }
}

TEST_CASE("efficiency ratio") {
  SUBCASE("hand-evaluated points") {
    CHECK(efficiency_ratio(0.5, 0.5, 1).r ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(efficiency_ratio(0.5, 0.5, 2).r ==
          doctest::Approx(32.0).epsilon(1e-12));
    CHECK(efficiency_ratio(0.75, 0.75, 1).r ==
          doctest::Approx(8.0 / 9.0).epsilon(1e-12));
  }

  SUBCASE("log-space evaluation matches the direct form where it exists") {
    for (int ei = 1; ei <= 19; ei += 3) {
      for (int li = 1; li <= 19; li += 3) {
        const double eta = 0.05 * ei;
        const double lambda = 0.05 * li;
        if (eta * lambda * lambda < 0.05) continue;
        for (int n = 1; n <= 6; ++n) {
          const double direct = direct_ratio(eta, lambda, n);
          const auto viaLog = efficiency_ratio(eta, lambda, n);
          CHECK(viaLog.r ==
                doctest::Approx(direct).epsilon(1e-12));
        }
      }
    }
  }

  SUBCASE("x = 0 is rejected") {
    CHECK_THROWS_AS(efficiency_ratio(0.5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(efficiency_ratio(0.0, 0.5, 1), std::invalid_argument);
  }
}

TEST_CASE("crossover search") {
  CHECK(crossover_n(0.5, 0.5) == 1);
  CHECK(crossover_n(0.75, 0.75) == 2);
  // Frozen from the direct form: r(2) = (0.375)^2 (64/27)^3.
  CHECK(efficiency_ratio(0.75, 0.75, 2).r ==
        doctest::Approx(0.140625 * std::pow(64.0 / 27.0, 3)).epsilon(1e-12));

  SUBCASE("brute-force scan agrees at a slow crossover") {
    const double eta = 0.9;
    const double lambda = 0.9;
    int expected = -1;
    for (int n = 1; n <= 32 && expected < 0; ++n) {
      if (direct_ratio(eta, lambda, n) > 1.0) expected = n;
    }
    REQUIRE(expected > 0);
    CHECK(crossover_n(eta, lambda) == expected);
  }

  SUBCASE("the ratio is strictly increasing beyond the crossover") {
    for (double eta : {0.3, 0.6, 0.9}) {
      for (double lambda : {0.2, 0.55, 0.9}) {
        const int start = crossover_n(eta, lambda);
        double previous = efficiency_ratio(eta, lambda, start).ln_r;
        for (int n = start + 1; n <= start + 6; ++n) {
          const double current = efficiency_ratio(eta, lambda, n).ln_r;
          CHECK(current > previous);
          previous = current;
        }
      }
    }
  }

  CHECK_THROWS_AS(crossover_n(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("inequality chain") {
  SUBCASE("holds on a dense grid") {
    for (int ei = 1; ei <= 19; ei += 2) {
      for (int li = 1; li <= 19; li += 2) {
        for (int n = 1; n <= 8; ++n) {
          const auto point = evaluate_point(0.05 * ei, 0.05 * li, n);
          const auto chain = chain_check(point);
          CHECK(chain.holds);
          CHECK(!chain.vacuous);
        }
      }
    }
  }

  SUBCASE("reference point: r = 2 <= 2.333 <= 2.333") {
    const auto point = evaluate_point(0.5, 0.5, 1);
    CHECK(point.p_b / (point.q * point.p_prime) ==
          doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(point.p_b / point.p_c == doctest::Approx(7.0 / 3.0).epsilon(1e-12));
    CHECK(chain_check(point).holds);
  }

  SUBCASE("bound above 1 keeps the ordering") {
    const auto point = evaluate_point(0.95, 0.95, 1);
    CHECK(point.p_prime > 1.0);
    CHECK(point.r < 1.0);
    const auto chain = chain_check(point);
    CHECK(chain.holds);
    CHECK(point.p_b / point.p_c >= 1.0 - 1e-12);
  }

  SUBCASE("vacuum source is flagged as vacuous") {
    const auto chain = chain_check(evaluate_point(0.5, 0.0, 1));
    CHECK(chain.holds);
    CHECK(chain.vacuous);
  }

  SUBCASE("lossless link with a nearly-vacuum source") {
    // q = 1 and p* = p', so the chain collapses onto r <= p_b/p* with
    // equality throughout.
    const auto point = evaluate_point(1.0, 1e-8, 1);
    CHECK(point.q == 1.0);
    const auto chain = chain_check(point);
    CHECK(chain.holds);
    CHECK(!chain.vacuous);
  }

  SUBCASE("r > 1 implies the photon scheme wins outright") {
    for (int ei = 1; ei <= 19; ei += 2) {
      for (int li = 1; li <= 19; li += 2) {
        for (int n = 1; n <= 6; ++n) {
          const auto point = evaluate_point(0.05 * ei, 0.05 * li, n);
          if (point.r > 1.0 && point.p_c > 0.0) {
            CHECK(point.p_b > point.p_c);
          }
        }
      }
    }
  }
}
