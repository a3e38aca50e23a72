#include <cmath>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "credit_engine/credit.hpp"
#include "doctest.h"

using namespace credit_engine;

namespace {

// Table of printed expected values and per-author credits for n = 1..9.
constexpr double kExpectedValues[] = {1.000, 4.0 / 3.0, 1.50,  1.60, 5.0 / 3.0,
                                      1.714, 1.750,     1.778, 1.800};
constexpr double kEqualCredits[] = {1.000, 2.0 / 3.0, 0.500, 0.400, 1.0 / 3.0,
                                    0.286, 0.250,     0.222, 0.200};

bool near_abs(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

}  // namespace

TEST_SUITE("credit_core") {

TEST_CASE("expected value closed form") {
  CHECK(expected_value(1) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expected_value(2) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(expected_value(9) == doctest::Approx(1.8).epsilon(1e-12));
  CHECK(expected_value(1, {7.5}) == doctest::Approx(7.5).epsilon(1e-12));
  for (int n = 0; n < 9; ++n) {
    CHECK(near_abs(expected_value(n + 1), kExpectedValues[n], 5e-4));
  }
}

TEST_CASE("expected value domain") {
  CHECK_THROWS_AS(expected_value(0), std::domain_error);
  CHECK_THROWS_AS(expected_value(-3), std::domain_error);
  CHECK_THROWS_AS(expected_value(kMaxAuthorCount + 1), std::range_error);
  CHECK_THROWS_AS(expected_value(2, {0.0}), std::domain_error);
  CHECK_THROWS_AS(expected_value(2, {-1.0}), std::domain_error);
  CHECK_NOTHROW(expected_value(kMaxAuthorCount));
}

TEST_CASE("equal credits") {
  CHECK(equal_credits(3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(equal_credits(7) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(equal_credits(1) == doctest::Approx(1.0).epsilon(1e-12));
  for (int n = 0; n < 9; ++n) {
    CHECK(near_abs(equal_credits(n + 1), kEqualCredits[n], 5e-4));
  }
}

TEST_CASE("recursion step") {
  CHECK(recursion_step(1.0, 2) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(recursion_step(4.0 / 3.0, 3) == doctest::Approx(1.5).epsilon(1e-12));
  // Multiplier n^2/(n^2-1) approaches one.
  CHECK(recursion_step(1.0, 1000000) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(recursion_step(1.0, 1), std::domain_error);
  CHECK_THROWS_AS(recursion_step(0.0, 2), std::domain_error);
  CHECK_THROWS_AS(recursion_step(-1.0, 2), std::domain_error);
}

TEST_CASE("recursion reproduces the closed form") {
  double v = expected_value(1);
  for (int n = 2; n <= 100; ++n) {
    v = recursion_step(v, n);
    CHECK(v == doctest::Approx(expected_value(n)).epsilon(1e-12));
  }
}

TEST_CASE("ordered credits match the printed table") {
  const std::vector<std::vector<double>> credits = {
      {1.000},
      {1.000, 1.0 / 3.0},
      {0.9166666666666666, 0.4166666666666666, 0.1666666666666666},
      {0.8333333333333333, 0.4333333333333333, 0.2333333333333333, 0.100},
      {0.7611111111111111, 0.4277777777777777, 0.2611111111111111, 0.150, 0.0666666666666666},
      {0.700, 0.414, 0.271, 0.176, 0.105, 0.048},
  };
  const std::vector<std::vector<double>> shares_pct = {
      {100.0},
      {75.0, 25.0},
      {61.111111, 27.777777, 11.111111},
      // The published table brackets the n=4 top share as 52.0, inconsistent
      // with its own credit cell (0.833/1.600 = 52.08%); the derived value
      // is asserted here.
      {52.083333, 27.083333, 14.583333, 6.25},
      {45.666666, 25.666666, 15.666666, 9.0, 4.0},
      {40.833333, 24.166666, 15.833333, 10.277777, 6.111111, 2.777777},
  };

  for (int n = 1; n <= 6; ++n) {
    const auto cv = ordered_credits(n);
    REQUIRE(cv.credits.size() == static_cast<std::size_t>(n));
    CHECK(cv.total == doctest::Approx(expected_value(n)).epsilon(1e-12));
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      CHECK(near_abs(cv.credits[i], credits[n - 1][i], 5e-4));
      CHECK(near_abs(cv.credits[i] / cv.total * 100.0, shares_pct[n - 1][i], 5e-2));
      if (i > 0) CHECK(cv.credits[i] < cv.credits[i - 1]);
      sum += cv.credits[i];
    }
    CHECK(sum == doctest::Approx(cv.total).epsilon(1e-9));
  }
}

TEST_CASE("ordered credits single author") {
  const auto cv = ordered_credits(1);
  CHECK(cv.credits.size() == 1);
  CHECK(cv.credits[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(ordered_credits(0), std::domain_error);
}

TEST_CASE("baseline credits") {
  SUBCASE("fractional") {
    const auto cv = baseline_credits(CountingMethod::fractional, 3);
    for (const auto c : cv.credits) CHECK(c == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cv.total == doctest::Approx(1.0));
  }
  SUBCASE("full") {
    const auto cv = baseline_credits(CountingMethod::full, 3);
    for (const auto c : cv.credits) CHECK(c == doctest::Approx(1.0));
    CHECK(cv.total == doctest::Approx(3.0));
  }
  SUBCASE("harmonic") {
    // Weights 1, 1/2, 1/3 normalized by hand: 6/11, 3/11, 2/11.
    const auto cv = baseline_credits(CountingMethod::harmonic, 3);
    CHECK(cv.credits[0] == doctest::Approx(6.0 / 11.0).epsilon(1e-12));
    CHECK(cv.credits[1] == doctest::Approx(3.0 / 11.0).epsilon(1e-12));
    CHECK(cv.credits[2] == doctest::Approx(2.0 / 11.0).epsilon(1e-12));
  }
  SUBCASE("geometric") {
    // Weights 4, 2, 1 normalized by hand: 4/7, 2/7, 1/7.
    const auto cv = baseline_credits(CountingMethod::geometric, 3);
    CHECK(cv.credits[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
    CHECK(cv.credits[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
    CHECK(cv.credits[2] == doctest::Approx(1.0 / 7.0).epsilon(1e-12));
  }
  SUBCASE("arithmetic") {
    // Weights 3, 2, 1 normalized by hand: 1/2, 1/3, 1/6.
    const auto cv = baseline_credits(CountingMethod::arithmetic, 3);
    CHECK(cv.credits[0] == doctest::Approx(1.0 / 2.0).epsilon(1e-12));
    CHECK(cv.credits[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(cv.credits[2] == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
  }
  SUBCASE("paper methods are rejected") {
    CHECK_THROWS_AS(baseline_credits(CountingMethod::paper_equal, 3), std::invalid_argument);
    CHECK_THROWS_AS(baseline_credits(CountingMethod::paper_ordered, 3), std::invalid_argument);
  }
}

TEST_CASE("credit vectors sum to their total and never increase") {
  const CountingMethod methods[] = {
      CountingMethod::paper_equal, CountingMethod::paper_ordered, CountingMethod::full,
      CountingMethod::fractional,  CountingMethod::arithmetic,    CountingMethod::geometric,
      CountingMethod::harmonic,
  };
  // Fixed spots plus a seeded random sweep of author counts and base values.
  std::vector<std::pair<int, double>> cases = {
      {1, 1.0}, {2, 1.0}, {3, 1.0}, {5, 1.0}, {17, 1.0}, {100, 1.0}, {1000, 1.0}};
  std::mt19937_64 gen(314159);
  std::uniform_int_distribution<int> pick_n(1, 5000);
  std::uniform_real_distribution<double> pick_v1(0.01, 100.0);
  for (int i = 0; i < 50; ++i) cases.emplace_back(pick_n(gen), pick_v1(gen));

  for (const auto method : methods) {
    for (const auto& [n, v1] : cases) {
      const auto cv = credit_vector(method, n, {v1});
      REQUIRE(cv.credits.size() == static_cast<std::size_t>(n));
      double sum = 0.0;
      for (int i = n - 1; i >= 0; --i) {
        sum += cv.credits[i];
        CHECK(cv.credits[i] >= 0.0);
        if (i > 0) CHECK(cv.credits[i] <= cv.credits[i - 1]);
      }
      CHECK(sum == doctest::Approx(cv.total).epsilon(1e-9));
      const bool ordered_method = method != CountingMethod::paper_equal &&
                                  method != CountingMethod::full &&
                                  method != CountingMethod::fractional;
      if (ordered_method && n <= 1000) {
        for (int i = 1; i < n; ++i) CHECK(cv.credits[i] < cv.credits[i - 1]);
      }
    }
  }
}

TEST_CASE("scale_to rescales the total to the expected value") {
  const auto scaled = scale_to(baseline_credits(CountingMethod::fractional, 2), {});
  CHECK(scaled.total == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(scaled.credits[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  const auto full = scale_to(baseline_credits(CountingMethod::full, 2), {});
  CHECK(full.total == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(full.credits[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // Paper methods already carry the expected-value total.
  const auto ordered = scale_to(ordered_credits(2), {});
  CHECK(ordered.credits[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ordered.credits[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("counting method names round-trip") {
  for (const auto name : {"paper_equal", "paper_ordered", "full", "fractional", "arithmetic",
                          "geometric", "harmonic"}) {
    CHECK(to_string(parse_counting_method(name)) == name);
  }
  CHECK_THROWS_AS(parse_counting_method("banana"), std::invalid_argument);
  CHECK_THROWS_AS(parse_counting_method(""), std::invalid_argument);
}

TEST_CASE("check_bounds") {
  CHECK(check_bounds({1.0, 4.0 / 3.0, 1.5, 1.6}).ok);
  const auto too_big = check_bounds({1.0, 2.1});
  CHECK_FALSE(too_big.ok);
  CHECK(too_big.first_violation == 2);
  const auto decreasing = check_bounds({1.0, 0.9});
  CHECK_FALSE(decreasing.ok);
  CHECK(decreasing.first_violation == 2);
  const auto later = check_bounds({1.0, 4.0 / 3.0, (4.0 / 3.0) * 1.6});
  CHECK_FALSE(later.ok);
  CHECK(later.first_violation == 3);
  CHECK(check_bounds({5.0}).ok);
  CHECK_THROWS_AS(check_bounds({}), std::domain_error);
}

TEST_CASE("value sequence properties") {
  std::vector<double> values;
  values.reserve(2000);
  for (int n = 1; n <= 2000; ++n) values.push_back(expected_value(n));

  CHECK(check_bounds(values).ok);
  for (int n = 1; n < 2000; ++n) {
    CHECK(values[n] > values[n - 1]);                          // monotone growth
    CHECK(equal_credits(n + 1) < equal_credits(n));            // average decay
    CHECK(values[n] < 2.0);                                    // hard cap
    if (n + 1 < 2000) {
      CHECK(values[n + 1] - 2.0 * values[n] + values[n - 1] < 0.0);  // concavity
    }
  }
  // 2 - epsilon is crossed once n exceeds 2/epsilon - 1.
  const double epsilon = 1e-3;
  CHECK(expected_value(2000) > 2.0 - epsilon);
}

TEST_CASE("hsu citation model") {
  CHECK(hsu_citation_model(5) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hsu_citation_model(40) == doctest::Approx(2.0).epsilon(1e-12));
  // (0.2)^(1/3), evaluated independently.
  CHECK(hsu_citation_model(1) == doctest::Approx(0.5848035476425733).epsilon(1e-12));
  CHECK_THROWS_AS(hsu_citation_model(0), std::domain_error);
}

}  // TEST_SUITE
