#include "nexp/gaps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nexp {

namespace {

constexpr size_t kMaxParts = 10000;
constexpr int kBurnIn = 3000;
constexpr int kTailPoints = 64;
constexpr double kSeedRadius = 1e-9;

// Interior starting offsets for the seeding orbits, spread over (0, 1) and
// away from simple rationals.
constexpr double kSeedOffsets[] = {0.2137313459, 0.5213371193, 0.7893137071};

double distance_to_union(const IntervalUnion& u, double x) {
  double best = std::numeric_limits<double>::infinity();
  for (const Interval& part : u.parts) {
    if (x < part.lo) {
      best = std::min(best, part.lo - x);
      break;
    }
    if (x <= part.hi) {
      return 0.0;
    }
    best = std::min(best, x - part.hi);
  }
  return best;
}

// max over x in a of dist(x, b). The distance function is piecewise linear
// in x, so the maximum sits at a part endpoint of `a` or at the midpoint of
// a hole of `b`.
double one_sided_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.parts.empty()) {
    return 0.0;
  }
  if (b.parts.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  double best = 0.0;
  for (const Interval& part : a.parts) {
    best = std::max(best, distance_to_union(b, part.lo));
    best = std::max(best, distance_to_union(b, part.hi));
  }
  for (size_t h = 0; h + 1 < b.parts.size(); ++h) {
    const double mid = 0.5 * (b.parts[h].hi + b.parts[h + 1].lo);
    for (const Interval& part : a.parts) {
      if (part.lo <= mid && mid <= part.hi) {
        best = std::max(best, distance_to_union(b, mid));
        break;
      }
    }
  }
  return best;
}

}  // namespace

double IntervalUnion::total_length() const {
  double sum = 0.0;
  for (const Interval& part : parts) {
    sum += part.width();
  }
  return sum;
}

bool IntervalUnion::contains(double x, double slack) const {
  for (const Interval& part : parts) {
    if (x >= part.lo - slack && x <= part.hi + slack) {
      return true;
    }
    if (part.lo - slack > x) {
      break;
    }
  }
  return false;
}

void IntervalUnion::normalize(double merge_eps) {
  if (parts.empty()) {
    return;
  }
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> merged;
  merged.reserve(parts.size());
  merged.push_back(parts.front());
  for (size_t idx = 1; idx < parts.size(); ++idx) {
    Interval& last = merged.back();
    const Interval& cur = parts[idx];
    if (cur.lo <= last.hi + merge_eps) {
      last.hi = std::max(last.hi, cur.hi);
    } else {
      merged.push_back(cur);
    }
  }
  parts = std::move(merged);
}

double derivative_bound(const MapParams& p) {
  const double r = p.alpha + 1.0;
  return p.N / (r * r);
}

IntervalUnion forward_image(const MapParams& p, const IntervalUnion& u) {
  const DigitRange range = digit_range(p);
  IntervalUnion image;
  for (const Interval& part : u.parts) {
    for (int j = range.d_min; j <= range.d_max; ++j) {
      // Closed cylinder of digit j, so a part touching a cylinder edge
      // produces the branch limit on both sides.
      const double cyl_lo = std::max(p.alpha, p.N / (p.alpha + 1.0 + j));
      const double cyl_hi = std::min(p.alpha + 1.0, p.N / (p.alpha + j));
      const double lo = std::max(part.lo, cyl_lo);
      const double hi = std::min(part.hi, cyl_hi);
      if (hi <= lo) {
        continue;
      }
      double img_lo = p.N / hi - j;
      double img_hi = p.N / lo - j;
      img_lo = std::clamp(img_lo, p.alpha, p.alpha + 1.0);
      img_hi = std::clamp(img_hi, p.alpha, p.alpha + 1.0);
      if (img_hi > img_lo) {
        image.parts.push_back({img_lo, img_hi});
      }
    }
  }
  image.normalize(0.0);
  return image;
}

double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b) {
  return std::max(one_sided_hausdorff(a, b), one_sided_hausdorff(b, a));
}

IntervalUnion attractor_iterate(const MapParams& p, int max_rounds,
                                double tol) {
  if (max_rounds < 1 || !(tol > 0.0)) {
    throw std::invalid_argument(
        "attractor_iterate: requires max_rounds >= 1 and tol > 0");
  }

  IntervalUnion current;
  for (double offset : kSeedOffsets) {
    double x = p.alpha + offset;
    for (int t = 0; t < kBurnIn; ++t) {
      x = gauss_step(p, x).x;
    }
    for (int t = 0; t < kTailPoints; ++t) {
      current.parts.push_back({std::max(p.alpha, x - kSeedRadius),
                               std::min(p.alpha + 1.0, x + kSeedRadius)});
      x = gauss_step(p, x).x;
    }
  }
  current.normalize(tol);

  // The set only ever grows, so a single quiet round is not proof of
  // convergence: right after seeding, the parts widen by (|T'|-1) times
  // their own tiny width per round, which can sit below tol for a few
  // rounds. A run of quiet rounds long enough to outlast that initial
  // widening is required before stopping.
  constexpr int kQuietRounds = 30;
  int quiet = 0;
  for (int round = 0; round < max_rounds; ++round) {
    IntervalUnion next = forward_image(p, current);
    for (const Interval& part : current.parts) {
      next.parts.push_back(part);
    }
    next.normalize(tol);
    if (next.parts.size() > kMaxParts) {
      throw ConvergenceError("attractor_iterate: part budget exhausted");
    }
    const double moved = hausdorff_distance(next, current);
    current = std::move(next);
    if (moved == 0.0) {
      return current;
    }
    quiet = (moved < tol) ? quiet + 1 : 0;
    if (quiet >= kQuietRounds) {
      return current;
    }
  }
  throw ConvergenceError("attractor_iterate: no convergence within " +
                         std::to_string(max_rounds) + " rounds");
}

std::vector<Interval> detect_gaps(const MapParams& p, double tol) {
  const IntervalUnion attractor = attractor_iterate(p, 20000, tol);
  const double min_width = 100.0 * tol;
  std::vector<Interval> gaps;
  if (attractor.parts.empty()) {
    return gaps;
  }
  if (attractor.parts.front().lo - p.alpha > min_width) {
    gaps.push_back({p.alpha, attractor.parts.front().lo});
  }
  for (size_t h = 0; h + 1 < attractor.parts.size(); ++h) {
    const Interval gap{attractor.parts[h].hi, attractor.parts[h + 1].lo};
    if (gap.width() > min_width) {
      gaps.push_back(gap);
    }
  }
  if (p.alpha + 1.0 - attractor.parts.back().hi > min_width) {
    gaps.push_back({attractor.parts.back().hi, p.alpha + 1.0});
  }
  return gaps;
}

}  // namespace nexp
