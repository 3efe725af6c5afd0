#include "nexp/natext.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "nexp/rng.hpp"

namespace nexp {

namespace {

constexpr double kEdgeSlack = 1e-12;
constexpr double kAmbiguityRadius = 1e-9;

double point_segment_distance(PlanarPoint p, PlanarPoint a, PlanarPoint b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  }
  const double ex = p.x - (a.x + t * dx);
  const double ey = p.y - (a.y + t * dy);
  return std::hypot(ex, ey);
}

Rect make_rect(double x_lo, double x_hi, double y_lo, double y_hi) {
  if (x_hi < x_lo) {
    if (x_lo - x_hi > 1e-9) {
      throw std::logic_error("quilting: rectangle x extent inverted");
    }
    x_hi = x_lo;
  }
  if (y_hi < y_lo) {
    if (y_lo - y_hi > 1e-9) {
      throw std::logic_error("quilting: rectangle y extent inverted");
    }
    y_hi = y_lo;
  }
  return {x_lo, x_hi, y_lo, y_hi};
}

}  // namespace

double NatExtDomain::bottom(double x) const {
  if (x <= t2_right) {
    return heights.A;
  }
  if (x <= t1_left) {
    return heights.B;
  }
  return heights.C;
}

double NatExtDomain::top(double x) const {
  if (x < t1_right) {
    return heights.D;
  }
  if (f_run_empty || x < t2_left) {
    return heights.E;
  }
  return heights.F;
}

NatExtDomain build_domain(const MatchingPair& pair, double alpha) {
  const PlateauHeights h = plateau_heights(pair);
  const AlphaClass c = classify_alpha(pair, alpha);
  if (!c.member && !c.boundary) {
    throw std::invalid_argument("build_domain: alpha=" + std::to_string(alpha) +
                                " outside the closed plateau [" +
                                std::to_string(h.A) + ", " +
                                std::to_string(h.B) + "]");
  }
  const double N = pair.N;
  const double d = pair.d;
  const double di = pair.d + static_cast<double>(pair.i);

  double t1_left;
  double t1_right;
  double t2_left;
  double t2_right;
  if (c.boundary && std::abs(alpha - h.B) < std::abs(alpha - h.A)) {
    // At the right plateau endpoint the orbit of alpha has period two and
    // the orbit of alpha+1 joins it, so the B run and the D run are empty
    // and the E run spans the whole interval.
    t1_left = N / alpha - di;
    t1_right = alpha;
    t2_left = alpha + 1.0;
    t2_right = t1_left;
  } else if (c.boundary) {
    // At the left endpoint alpha maps to alpha+1, so the A, C and E runs
    // are empty.
    t1_left = alpha + 1.0;
    t1_right = N / (alpha + 1.0) - d;
    t2_left = t1_right;
    t2_right = alpha;
  } else {
    t1_left = N / alpha - di;
    t1_right = N / (alpha + 1.0) - d;
    t2_left = N / t1_left - d;
    t2_right = N / t1_right - di;
  }

  const bool f_empty = t2_left >= alpha + 1.0 - kEdgeSlack;
  const double top_right_level = f_empty ? h.E : h.F;
  NatExtDomain dom{pair,
                   alpha,
                   h,
                   t1_left,
                   t1_right,
                   t2_left,
                   t2_right,
                   f_empty,
                   {{{alpha, h.A},
                     {t2_right, h.A},
                     {t2_right, h.B},
                     {t1_left, h.B},
                     {t1_left, h.C},
                     {alpha + 1.0, h.C},
                     {alpha + 1.0, top_right_level},
                     {t2_left, top_right_level},
                     {t2_left, h.E},
                     {t1_right, h.E},
                     {t1_right, h.D},
                     {alpha, h.D}}}};
  return dom;
}

PlanarPoint natext_step(const MapParams& p, PlanarPoint pt) {
  const OrbitStep s = gauss_step(p, pt.x);
  return {s.x, p.N / (s.digit + pt.y)};
}

PlanarPoint natext_inverse(const MapParams& p, int j, PlanarPoint pt) {
  return {p.N / (pt.x + j), p.N / pt.y - j};
}

bool contains(const NatExtDomain& dom, PlanarPoint pt) {
  if (pt.x < dom.alpha - kEdgeSlack || pt.x > dom.alpha + 1.0 + kEdgeSlack) {
    return false;
  }
  const double x = std::clamp(pt.x, dom.alpha, dom.alpha + 1.0);
  return pt.y >= dom.bottom(x) - kEdgeSlack &&
         pt.y <= dom.top(x) + kEdgeSlack;
}

double boundary_distance(const NatExtDomain& dom, PlanarPoint pt) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t e = 0; e < dom.vertices.size(); ++e) {
    const PlanarPoint a = dom.vertices[e];
    const PlanarPoint b = dom.vertices[(e + 1) % dom.vertices.size()];
    best = std::min(best, point_segment_distance(pt, a, b));
  }
  return best;
}

LaminationReport check_lamination(const NatExtDomain& dom, long long samples,
                                  uint64_t seed) {
  if (samples < 0) {
    throw std::invalid_argument("check_lamination: samples must be >= 0");
  }
  Rng rng(seed);
  const MapParams p(dom.pair.N, dom.alpha);
  const double lo_y = dom.heights.A;
  const double hi_y = dom.heights.F;
  const long long d_lo = dom.pair.d;
  const long long d_hi = dom.pair.d + dom.pair.i;

  LaminationReport rep{samples, 0, 0, 0};
  for (long long s = 0; s < samples; ++s) {
    PlanarPoint pt;
    do {
      pt = {rng.uniform(dom.alpha, dom.alpha + 1.0), rng.uniform(lo_y, hi_y)};
    } while (!contains(dom, pt));

    const double base = p.N / pt.y;
    const long long j_lo =
        std::max(d_lo, static_cast<long long>(std::ceil(base - hi_y - 0.5)));
    const long long j_hi =
        std::min(d_hi, static_cast<long long>(std::floor(base - lo_y + 0.5)));
    int count = 0;
    bool ambiguous = false;
    for (long long j = j_lo; j <= j_hi; ++j) {
      const PlanarPoint q{p.N / (pt.x + j), base - j};
      if (boundary_distance(dom, q) < kAmbiguityRadius) {
        ambiguous = true;
        break;
      }
      if (contains(dom, q)) {
        ++count;
      }
    }
    if (ambiguous) {
      ++rep.boundary_excluded;
      continue;
    }
    if (count != 1) {
      ++rep.violations;
    }
    rep.max_overlap = std::max(rep.max_overlap, count);
  }
  return rep;
}

QuiltingContext::QuiltingContext(const MatchingPair& pair, double alpha,
                                 double beta)
    : pair_(pair),
      pa_(pair.N, alpha),
      pb_(pair.N, beta),
      dom_alpha_(build_domain(pair, alpha)),
      dom_beta_(build_domain(pair, beta)) {
  if (!(alpha <= beta)) {
    throw std::invalid_argument("QuiltingContext: requires alpha <= beta");
  }
  const AlphaClass ca = classify_alpha(pair, alpha);
  const AlphaClass cb = classify_alpha(pair, beta);
  if (!ca.member || !cb.member) {
    throw std::invalid_argument(
        "QuiltingContext: both parameters must lie in the open plateau");
  }
  if (ca.k != cb.k) {
    throw std::invalid_argument(
        "QuiltingContext: parameters lie in different constant-k slices, k=" +
        std::to_string(ca.k) + " vs k=" + std::to_string(cb.k));
  }
  k_ = ca.k;

  const PlateauHeights& h = dom_alpha_.heights;
  const double N = pair.N;
  const double t3_a_left = gauss_step(pa_, dom_alpha_.t2_left).x;
  const double t3_a_right = gauss_step(pa_, dom_alpha_.t2_right).x;
  const double t3_b_left = gauss_step(pb_, dom_beta_.t2_left).x;
  const double t3_b_right = gauss_step(pb_, dom_beta_.t2_right).x;

  patches_.A0 = make_rect(alpha, beta, h.A, h.D);
  patches_.A1 =
      make_rect(dom_beta_.t1_left, dom_alpha_.t1_left, h.B, h.C);
  patches_.A2 =
      make_rect(dom_alpha_.t2_left, dom_beta_.t2_left, h.E, h.F);
  patches_.D0 = make_rect(alpha + 1.0, beta + 1.0, h.C, h.F);
  patches_.D1 =
      make_rect(dom_beta_.t1_right, dom_alpha_.t1_right, h.D, h.E);
  patches_.D2 =
      make_rect(dom_alpha_.t2_right, dom_beta_.t2_right, h.A, h.B);
  patches_.final_added =
      make_rect(t3_b_left, t3_a_left, N / (k_ + h.F), N / (k_ + h.E));
  patches_.final_deleted = make_rect(t3_b_right, t3_a_right,
                                     N / (k_ + 1.0 + h.B), N / (k_ + 1.0 + h.A));
}

namespace {

// Applies `steps` forward extension steps with the given digits, then the
// same number of inverse branches.
PlanarPoint chase(double N, const long long* fwd_digits,
                  const long long* inv_branches, int steps, PlanarPoint pt) {
  for (int s = 0; s < steps; ++s) {
    const double g = static_cast<double>(fwd_digits[s]);
    pt = {N / pt.x - g, N / (g + pt.y)};
  }
  for (int s = 0; s < steps; ++s) {
    const double j = static_cast<double>(inv_branches[s]);
    pt = {N / (pt.x + j), N / pt.y - j};
  }
  return pt;
}

}  // namespace

PlanarPoint QuiltingContext::map(PlanarPoint pt) const {
  if (!contains(dom_beta_, pt)) {
    throw std::domain_error("quilting map: point outside the beta domain");
  }
  int steps = 0;
  if (patches_.D0.contains(pt)) {
    steps = 3;
  } else if (patches_.D1.contains(pt)) {
    steps = 2;
  } else if (patches_.D2.contains(pt)) {
    steps = 1;
  } else {
    return pt;
  }
  const long long di = pair_.d + pair_.i;
  const long long fwd[3] = {pair_.d, di, k_ + 1LL};
  const long long inv[3] = {k_, pair_.d, di};
  return chase(pair_.N, fwd + (3 - steps), inv, steps, pt);
}

PlanarPoint QuiltingContext::map_inverse(PlanarPoint pt) const {
  if (!contains(dom_alpha_, pt)) {
    throw std::domain_error(
        "quilting map inverse: point outside the alpha domain");
  }
  int steps = 0;
  if (patches_.A0.contains(pt)) {
    steps = 3;
  } else if (patches_.A1.contains(pt)) {
    steps = 2;
  } else if (patches_.A2.contains(pt)) {
    steps = 1;
  } else {
    return pt;
  }
  const long long di = pair_.d + pair_.i;
  const long long fwd[3] = {di, pair_.d, static_cast<long long>(k_)};
  const long long inv[3] = {k_ + 1LL, di, pair_.d};
  return chase(pair_.N, fwd + (3 - steps), inv, steps, pt);
}

double QuiltingContext::residual() const {
  const Rect& a = patches_.final_added;
  const Rect& b = patches_.final_deleted;
  double r = std::abs(a.x_lo - b.x_lo);
  r = std::max(r, std::abs(a.x_hi - b.x_hi));
  r = std::max(r, std::abs(a.y_lo - b.y_lo));
  r = std::max(r, std::abs(a.y_hi - b.y_hi));
  return r;
}

QuiltPatches quilting_regions(const MatchingPair& pair, double alpha,
                              double beta) {
  return QuiltingContext(pair, alpha, beta).patches();
}

PlanarPoint quilting_map(const MatchingPair& pair, double alpha, double beta,
                         PlanarPoint pt) {
  return QuiltingContext(pair, alpha, beta).map(pt);
}

PlanarPoint quilting_map_inverse(const MatchingPair& pair, double alpha,
                                 double beta, PlanarPoint pt) {
  return QuiltingContext(pair, alpha, beta).map_inverse(pt);
}

double verify_quilting(const MatchingPair& pair, double alpha, double beta) {
  return QuiltingContext(pair, alpha, beta).residual();
}

}  // namespace nexp
