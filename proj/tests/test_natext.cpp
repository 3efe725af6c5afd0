#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "nexp/core_map.hpp"
#include "nexp/matching.hpp"
#include "nexp/natext.hpp"
#include "nexp/rng.hpp"

using namespace nexp;

namespace {
const MatchingPair kPair213(2, 1, 3);

// Uniform point of dom, found by rejection against the bounding box.
PlanarPoint random_interior_point(const NatExtDomain& dom, Rng& rng) {
  for (;;) {
    const PlanarPoint q{rng.uniform(dom.alpha, dom.alpha + 1.0),
                        rng.uniform(dom.heights.A, dom.heights.F)};
    if (contains(dom, q) && boundary_distance(dom, q) > 1e-7) return q;
  }
}
}  // namespace

TEST_CASE("domain marks for N=2 alpha=0.39") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  CHECK(dom.t1_left == doctest::Approx(44.0 / 39.0).epsilon(1e-14));
  CHECK(dom.t1_right == doctest::Approx(61.0 / 139.0).epsilon(1e-14));
  CHECK(dom.t2_left == doctest::Approx(17.0 / 22.0).epsilon(1e-14));
  CHECK(dom.t2_right == doctest::Approx(34.0 / 61.0).epsilon(1e-14));
  CHECK_FALSE(dom.f_run_empty);
}

TEST_CASE("step profiles of the N=2 domain") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const PlateauHeights& h = dom.heights;
  CHECK(dom.bottom(0.50) == doctest::Approx(h.A));
  CHECK(dom.bottom(0.60) == doctest::Approx(h.B));
  CHECK(dom.bottom(1.20) == doctest::Approx(h.C));
  CHECK(dom.top(0.41) == doctest::Approx(h.D));
  CHECK(dom.top(0.60) == doctest::Approx(h.E));
  CHECK(dom.top(0.80) == doctest::Approx(h.F));
}

TEST_CASE("vertex ring walks the outline clockwise") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const PlateauHeights& h = dom.heights;
  const double a = 0.39;
  const PlanarPoint expected[12] = {
      {a, h.A},           {dom.t2_right, h.A}, {dom.t2_right, h.B},
      {dom.t1_left, h.B}, {dom.t1_left, h.C},  {a + 1.0, h.C},
      {a + 1.0, h.F},     {dom.t2_left, h.F},  {dom.t2_left, h.E},
      {dom.t1_right, h.E}, {dom.t1_right, h.D}, {a, h.D}};
  for (int v = 0; v < 12; ++v) {
    CAPTURE(v);
    CHECK(dom.vertices[v].x == doctest::Approx(expected[v].x).epsilon(1e-13));
    CHECK(dom.vertices[v].y == doctest::Approx(expected[v].y).epsilon(1e-13));
  }
}

TEST_CASE("construction requires alpha inside the closed plateau") {
  const PlateauHeights h = plateau_heights(kPair213);
  CHECK_THROWS_AS(build_domain(kPair213, 0.36), std::invalid_argument);
  CHECK_THROWS_AS(build_domain(kPair213, h.B + 1e-6), std::invalid_argument);
  CHECK_NOTHROW(build_domain(kPair213, h.A));
  CHECK_NOTHROW(build_domain(kPair213, h.B));
}

TEST_CASE("endpoint domains collapse the expected runs") {
  const PlateauHeights h = plateau_heights(kPair213);
  SUBCASE("at the left endpoint the middle bottom run fills the base") {
    const NatExtDomain dom = build_domain(kPair213, h.A);
    CHECK(dom.t1_left == doctest::Approx(h.A + 1.0).epsilon(1e-12));
    CHECK_FALSE(dom.f_run_empty);
    CHECK(dom.bottom(h.A + 0.2) == doctest::Approx(h.B));
    CHECK(dom.top(h.A + 0.05) == doctest::Approx(h.D));
    CHECK(dom.top(h.A + 0.2) == doctest::Approx(h.F));
  }
  SUBCASE("at the right endpoint the top F run is empty") {
    const NatExtDomain dom = build_domain(kPair213, h.B);
    CHECK(dom.f_run_empty);
    CHECK(dom.top(h.B + 0.9) == doctest::Approx(h.E));
    CHECK(dom.vertices[6].y == doctest::Approx(h.E));
    CHECK(dom.vertices[7].y == doctest::Approx(h.E));
  }
}

TEST_CASE("membership tests near the profile steps") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const PlateauHeights& h = dom.heights;
  CHECK(contains(dom, {0.5, (h.A + h.B) / 2.0}));
  CHECK(contains(dom, {0.7, (h.B + h.E) / 2.0}));
  CHECK_FALSE(contains(dom, {dom.t1_right - 1e-6, (h.D + h.E) / 2.0}));
  CHECK(contains(dom, {dom.t1_right + 1e-6, (h.D + h.E) / 2.0}));
  CHECK_FALSE(contains(dom, {0.39 - 1e-6, (h.B + h.D) / 2.0}));
  CHECK_FALSE(contains(dom, {1.39 + 1e-6, (h.B + h.D) / 2.0}));
  CHECK_FALSE(contains(dom, {1.2, (h.A + h.B) / 2.0}));
  CHECK_FALSE(contains(dom, {0.5, h.F + 1e-6}));
}

TEST_CASE("boundary distance") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const PlateauHeights& h = dom.heights;
  CHECK(boundary_distance(dom, {0.39, (h.A + h.D) / 2.0}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(boundary_distance(dom, {0.45, h.A}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(boundary_distance(dom, {0.7, (h.B + h.E) / 2.0}) > 0.05);
}

TEST_CASE("planar step values") {
  const MapParams p(2, 0.39);
  const PlateauHeights h = plateau_heights(kPair213);
  SUBCASE("left endpoint with the bottom height") {
    const PlanarPoint q = natext_step(p, {0.39, h.A});
    CHECK(q.x == doctest::Approx(44.0 / 39.0).epsilon(1e-13));
    CHECK(q.y == doctest::Approx(h.C).epsilon(1e-13));
  }
  SUBCASE("right endpoint with the second bottom height") {
    const PlanarPoint q = natext_step(p, {1.39, h.B});
    CHECK(q.x == doctest::Approx(61.0 / 139.0).epsilon(1e-13));
    CHECK(q.y == doctest::Approx(h.F).epsilon(1e-13));
  }
}

TEST_CASE("planar step and branch inverse roundtrip") {
  Rng rng(2718);
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const MapParams p(2, 0.39);
  for (int t = 0; t < 200; ++t) {
    const PlanarPoint q = random_interior_point(dom, rng);
    const int j = digit(p, q.x);
    const PlanarPoint fwd = natext_step(p, q);
    const PlanarPoint back = natext_inverse(p, j, fwd);
    CHECK(back.x == doctest::Approx(q.x).epsilon(1e-11));
    CHECK(back.y == doctest::Approx(q.y).epsilon(1e-11));
  }
}

TEST_CASE("the planar map is one-to-one on the domain") {
  const NatExtDomain dom = build_domain(kPair213, 0.39);
  const LaminationReport rep = check_lamination(dom, 100000, 42);
  CHECK(rep.samples == 100000);
  CHECK(rep.violations == 0);
  CHECK(rep.max_overlap == 1);
  CHECK(rep.boundary_excluded < rep.samples / 1000);
}

TEST_CASE("a tampered domain fails the one-to-one check") {
  NatExtDomain dom = build_domain(kPair213, 0.39);
  dom.heights.E += 0.01;
  dom.vertices[8].y += 0.01;
  dom.vertices[9].y += 0.01;
  const LaminationReport rep = check_lamination(dom, 100000, 42);
  CHECK(rep.violations > 0);
}

TEST_CASE("quilting context construction rules") {
  const auto slices = plateau_slices(kPair213);
  REQUIRE(slices.size() == 3);
  const PlateauSlice& mid = slices[1];
  REQUIRE(mid.k == 2);
  const double a = mid.lo + 0.25 * (mid.hi - mid.lo);
  const double b = mid.lo + 0.75 * (mid.hi - mid.lo);
  CHECK_NOTHROW(QuiltingContext(kPair213, a, b));
  CHECK(QuiltingContext(kPair213, a, b).k() == 2);
  CHECK_THROWS_AS(QuiltingContext(kPair213, b, a), std::invalid_argument);
  CHECK_THROWS_AS(QuiltingContext(kPair213, 0.39, 0.40),
                  std::invalid_argument);
  CHECK_THROWS_AS(QuiltingContext(kPair213, 0.36, 0.39),
                  std::invalid_argument);
}

TEST_CASE("quilting patch extents") {
  const auto slices = plateau_slices(kPair213);
  const PlateauSlice& mid = slices[1];
  const double a = mid.lo + 0.25 * (mid.hi - mid.lo);
  const double b = mid.lo + 0.75 * (mid.hi - mid.lo);
  const QuiltingContext ctx(kPair213, a, b);
  const PlateauHeights h = plateau_heights(kPair213);
  const QuiltPatches& q = ctx.patches();
  CHECK(q.A0.x_lo == doctest::Approx(a).epsilon(1e-14));
  CHECK(q.A0.x_hi == doctest::Approx(b).epsilon(1e-14));
  CHECK(q.A0.y_lo == doctest::Approx(h.A).epsilon(1e-13));
  CHECK(q.A0.y_hi == doctest::Approx(h.D).epsilon(1e-13));
  CHECK(q.D0.x_lo == doctest::Approx(a + 1.0).epsilon(1e-14));
  CHECK(q.D0.x_hi == doctest::Approx(b + 1.0).epsilon(1e-14));
  CHECK(q.D0.y_lo == doctest::Approx(h.C).epsilon(1e-13));
  CHECK(q.D0.y_hi == doctest::Approx(h.F).epsilon(1e-13));
  CHECK(q.A1.y_lo == doctest::Approx(h.B).epsilon(1e-13));
  CHECK(q.A1.y_hi == doctest::Approx(h.C).epsilon(1e-13));
  CHECK(q.D1.y_lo == doctest::Approx(h.D).epsilon(1e-13));
  CHECK(q.D1.y_hi == doctest::Approx(h.E).epsilon(1e-13));
  CHECK(q.A2.y_lo == doctest::Approx(h.E).epsilon(1e-13));
  CHECK(q.D2.y_lo == doctest::Approx(h.A).epsilon(1e-13));
  CHECK(q.final_added.width() > 0.0);
  CHECK(q.final_deleted.width() > 0.0);
}

TEST_CASE("quilting map carries the deleted patches onto the added ones") {
  const auto slices = plateau_slices(kPair213);
  const PlateauSlice& mid = slices[1];
  const double a = mid.lo + 0.25 * (mid.hi - mid.lo);
  const double b = mid.lo + 0.75 * (mid.hi - mid.lo);
  const QuiltingContext ctx(kPair213, a, b);
  const QuiltPatches& q = ctx.patches();
  CHECK(ctx.residual() < 1e-9);
  CHECK(verify_quilting(kPair213, a, b) < 1e-9);

  Rng rng(777);
  const Rect* dels[3] = {&q.D0, &q.D1, &q.D2};
  const Rect* adds[3] = {&q.A0, &q.A1, &q.A2};
  for (int r = 0; r < 3; ++r) {
    for (int t = 0; t < 50; ++t) {
      const PlanarPoint pt{rng.uniform(dels[r]->x_lo, dels[r]->x_hi),
                           rng.uniform(dels[r]->y_lo, dels[r]->y_hi)};
      const PlanarPoint img = ctx.map(pt);
      CHECK(img.x >= adds[r]->x_lo - 1e-9);
      CHECK(img.x <= adds[r]->x_hi + 1e-9);
      CHECK(img.y >= adds[r]->y_lo - 1e-9);
      CHECK(img.y <= adds[r]->y_hi + 1e-9);
      const PlanarPoint back = ctx.map_inverse(img);
      CHECK(back.x == doctest::Approx(pt.x).epsilon(1e-10));
      CHECK(back.y == doctest::Approx(pt.y).epsilon(1e-10));
    }
  }
}

TEST_CASE("quilting map is the identity away from the deleted patches") {
  const auto slices = plateau_slices(kPair213);
  const PlateauSlice& mid = slices[1];
  const double a = mid.lo + 0.25 * (mid.hi - mid.lo);
  const double b = mid.lo + 0.75 * (mid.hi - mid.lo);
  const QuiltingContext ctx(kPair213, a, b);
  const QuiltPatches& q = ctx.patches();
  Rng rng(31337);
  const NatExtDomain dom_b = ctx.domain_beta();
  int checked = 0;
  while (checked < 100) {
    const PlanarPoint pt = random_interior_point(dom_b, rng);
    if (q.D0.contains(pt) || q.D1.contains(pt) || q.D2.contains(pt)) continue;
    const PlanarPoint img = ctx.map(pt);
    CHECK(img.x == doctest::Approx(pt.x).epsilon(1e-14));
    CHECK(img.y == doctest::Approx(pt.y).epsilon(1e-14));
    ++checked;
  }
  const PlateauHeights h = plateau_heights(kPair213);
  CHECK_THROWS_AS(ctx.map({b + 0.5, h.A - 0.01}), std::domain_error);
}

TEST_CASE("quilting with equal parameters is trivial") {
  const auto slices = plateau_slices(kPair213);
  const double a = slices[1].mid();
  const QuiltingContext ctx(kPair213, a, a);
  CHECK(ctx.residual() < 1e-12);
  CHECK(ctx.patches().A0.width() == doctest::Approx(0.0));
}

TEST_CASE("quilting residual stays small on another pair") {
  const MatchingPair pr(8, 2, 2);
  const auto slices = plateau_slices(pr);
  REQUIRE(!slices.empty());
  const PlateauSlice& s = slices.front();
  const double a = s.lo + 0.3 * (s.hi - s.lo);
  const double b = s.lo + 0.6 * (s.hi - s.lo);
  CHECK(verify_quilting(pr, a, b) < 1e-9);
}
