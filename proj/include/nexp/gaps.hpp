#pragma once

#include <stdexcept>
#include <vector>

#include "nexp/core_map.hpp"

namespace nexp {

struct Interval {
  double lo;
  double hi;

  double width() const { return hi - lo; }
};

// Finite union of closed intervals, kept sorted and pairwise disjoint.
struct IntervalUnion {
  std::vector<Interval> parts;

  double total_length() const;
  bool contains(double x, double slack = 0.0) const;
  // Sorts the parts and merges any two closer than merge_eps.
  void normalize(double merge_eps);
};

// Thrown when the attractor iteration exhausts its round or size budget
// before the set settles.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// min |T'| over the interval, namely N/(alpha+1)^2. A value above 2 forces
// every point of [alpha, alpha+1] into the attractor, so the gap list is
// empty whenever this bound exceeds 2.
double derivative_bound(const MapParams& p);

// Image T(u) as an interval union: each part is cut along the digit
// cylinders, taken closed, and each piece maps to a closed interval clamped
// to [alpha, alpha+1].
IntervalUnion forward_image(const MapParams& p, const IntervalUnion& u);

// Hausdorff distance between two unions, as subsets of the line.
double hausdorff_distance(const IntervalUnion& a, const IntervalUnion& b);

// Topological attractor of the map: the smallest forward-invariant union of
// closed intervals that long orbits settle into. Computed in two phases.
// Orbits from a few fixed starting points are burned in past their transient
// and their tails seed tiny intervals; the union is then grown by adding its
// own forward image until a round moves it by less than tol in Hausdorff
// distance. Growing from orbit tails matters because the full interval is
// itself a fixed point of the image operation whenever T is onto, which
// says nothing about where orbits accumulate. Throws ConvergenceError when
// max_rounds rounds or the part cap of 10000 are exhausted.
IntervalUnion attractor_iterate(const MapParams& p, int max_rounds,
                                double tol);

// Open components of [alpha, alpha+1] minus the attractor, widths below
// 100*tol dropped.
std::vector<Interval> detect_gaps(const MapParams& p, double tol = 1e-10);

}  // namespace nexp
