#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nexp/core_map.hpp"
#include "nexp/gaps.hpp"
#include "nexp/rng.hpp"
#include "oracles.hpp"

using namespace nexp;

TEST_CASE("interval union normalize merges and sorts") {
  IntervalUnion u;
  u.parts = {{0.8, 0.9}, {0.1, 0.3}, {0.3, 0.5}, {0.55, 0.6}};
  u.normalize(1e-12);
  REQUIRE(u.parts.size() == 3);
  CHECK(u.parts[0].lo == doctest::Approx(0.1));
  CHECK(u.parts[0].hi == doctest::Approx(0.5));
  CHECK(u.parts[1].lo == doctest::Approx(0.55));
  CHECK(u.parts[2].hi == doctest::Approx(0.9));
  CHECK(u.total_length() == doctest::Approx(0.55));
  CHECK(u.contains(0.2));
  CHECK(u.contains(0.5));
  CHECK_FALSE(u.contains(0.52));
  CHECK(u.contains(0.52, 0.03));
}

TEST_CASE("hausdorff distance of simple unions") {
  IntervalUnion a;
  a.parts = {{0.0, 1.0}};
  IntervalUnion b;
  b.parts = {{0.0, 0.4}, {0.6, 1.0}};
  CHECK(hausdorff_distance(a, b) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hausdorff_distance(b, a) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(hausdorff_distance(a, a) == 0.0);
  IntervalUnion c;
  c.parts = {{0.2, 1.3}};
  CHECK(hausdorff_distance(a, c) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("derivative bound") {
  CHECK(derivative_bound(MapParams(2, 0.39)) ==
        doctest::Approx(2.0 / (1.39 * 1.39)).epsilon(1e-14));
  CHECK(derivative_bound(MapParams(51, 6.0)) ==
        doctest::Approx(51.0 / 49.0).epsilon(1e-14));
  CHECK(derivative_bound(MapParams(9, 0.5)) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("forward image of the full interval") {
  const MapParams p(2, 0.39);
  IntervalUnion full;
  full.parts = {{0.39, 1.39}};
  const IntervalUnion img = forward_image(p, full);
  REQUIRE(img.parts.size() == 1);
  CHECK(img.parts[0].lo == doctest::Approx(0.39).epsilon(1e-12));
  CHECK(img.parts[0].hi == doctest::Approx(1.39).epsilon(1e-12));
}

TEST_CASE("forward image across a cylinder cut") {
  const MapParams p(51, 6.0);
  IntervalUnion u;
  u.parts = {{6.0, 6.375}};
  const IntervalUnion img = forward_image(p, u);
  REQUIRE(img.parts.size() == 1);
  CHECK(img.parts[0].lo == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(img.parts[0].hi == doctest::Approx(6.5).epsilon(1e-12));
}

TEST_CASE("endpoint orbits that frame the gaps of N=51") {
  const MapParams p(51, 6.0);
  const auto left = orbit(p, 6.0, 2);
  CHECK(left[0].x == doctest::Approx(6.5).epsilon(1e-14));
  CHECK(left[1].x == doctest::Approx(89.0 / 13.0).epsilon(1e-13));
  const auto right = orbit(p, 7.0, 2);
  CHECK(right[0].x == doctest::Approx(44.0 / 7.0).epsilon(1e-14));
  CHECK(right[1].x == doctest::Approx(269.0 / 44.0).epsilon(1e-13));
}

TEST_CASE("gap detection for N=51 alpha=6") {
  const MapParams p(51, 6.0);
  const auto gaps = detect_gaps(p);
  REQUIRE(gaps.size() == 2);
  CHECK(std::abs(gaps[0].lo - 269.0 / 44.0) < 1e-8);
  CHECK(std::abs(gaps[0].hi - 44.0 / 7.0) < 1e-8);
  CHECK(std::abs(gaps[1].lo - 6.5) < 1e-8);
  CHECK(std::abs(gaps[1].hi - 89.0 / 13.0) < 1e-8);
  // Both repelling fixed points sit strictly inside a gap.
  CHECK(gaps[1].lo < fixed_point(51, 1));
  CHECK(fixed_point(51, 1) < gaps[1].hi);
  CHECK(gaps[0].lo < fixed_point(51, 2));
  CHECK(fixed_point(51, 2) < gaps[0].hi);
}

TEST_CASE("the N=51 attractor is forward invariant and avoids the gaps") {
  const MapParams p(51, 6.0);
  const IntervalUnion attractor = attractor_iterate(p, 20000, 1e-10);
  CHECK(attractor.contains(6.0, 1e-8));
  CHECK(attractor.contains(269.0 / 44.0, 1e-8));
  CHECK(attractor.contains(44.0 / 7.0, 1e-8));
  CHECK(attractor.contains(6.5, 1e-8));
  CHECK(attractor.contains(89.0 / 13.0, 1e-8));
  CHECK(attractor.contains(7.0, 1e-8));
  CHECK_FALSE(attractor.contains(6.2, 1e-4));
  CHECK_FALSE(attractor.contains(6.66, 1e-4));
  IntervalUnion img = forward_image(p, attractor);
  for (const Interval& part : img.parts) {
    CHECK(attractor.contains(part.lo, 1e-7));
    CHECK(attractor.contains(part.hi, 1e-7));
  }
  // Long orbits stay inside the computed attractor.
  Rng rng(64);
  for (int t = 0; t < 20; ++t) {
    double x = rng.uniform(6.0, 7.0);
    for (int burn = 0; burn < 2000; ++burn) x = gauss_step(p, x).x;
    for (int s = 0; s < 100; ++s) {
      CHECK(attractor.contains(x, 1e-6));
      x = gauss_step(p, x).x;
    }
  }
}

TEST_CASE("maps without gaps") {
  CHECK(detect_gaps(MapParams(2, 0.39)).empty());
  CHECK(detect_gaps(MapParams(9, 0.5)).empty());
  const IntervalUnion attractor = attractor_iterate(MapParams(9, 0.5), 20000,
                                                    1e-10);
  CHECK(attractor.total_length() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("strong expansion certifies an empty gap list") {
  Rng rng(1234);
  int tried = 0;
  while (tried < 10) {
    const int N = 2 + static_cast<int>(rng.uniform01() * 30);
    const double limit = std::sqrt(static_cast<double>(N)) - 1.0;
    const double alpha = rng.uniform(0.05, limit);
    const MapParams p(N, alpha);
    if (derivative_bound(p) <= 2.0) continue;
    CAPTURE(N);
    CAPTURE(alpha);
    CHECK(detect_gaps(p).empty());
    ++tried;
  }
}

TEST_CASE("exhausted budgets raise the convergence error") {
  CHECK_THROWS_AS(attractor_iterate(MapParams(51, 6.0), 2, 1e-14),
                  ConvergenceError);
}
