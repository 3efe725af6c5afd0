#pragma once

#include <array>
#include <cstdint>

#include "nexp/core_map.hpp"
#include "nexp/matching.hpp"

namespace nexp {

struct PlanarPoint {
  double x;
  double y;
};

// Planar domain of the two-dimensional extension
//
//   S(x, y) = (T(x), N / (d(x) + y)),
//
// for a parameter alpha in the closed plateau [A, B] of a matching pair. The
// domain sits over [alpha, alpha+1], bounded below by a three-step profile
// through the levels A, B, C and above by one through D, E, F. The steps fall
// at the first and second orbit points of the two endpoints of the interval:
//
//   bottom:  A on [alpha, T^2(alpha+1)],  B to T(alpha),  C to alpha+1
//   top:     D on [alpha, T(alpha+1)],    E to T^2(alpha), F to alpha+1
//
// The boundary is the 12-vertex polygon listed clockwise from (alpha, A). At
// the plateau endpoints alpha = A and alpha = B some runs are empty, the
// marks are taken as limits from the interior, and consecutive vertices
// coincide.
struct NatExtDomain {
  MatchingPair pair;
  double alpha;
  PlateauHeights heights;

  // Orbit points T(alpha), T(alpha+1), T^2(alpha), T^2(alpha+1).
  double t1_left;
  double t1_right;
  double t2_left;
  double t2_right;

  // True when the top level F is never attained, which happens at alpha = B
  // where the E run reaches all the way to alpha+1.
  bool f_run_empty;

  std::array<PlanarPoint, 12> vertices;

  double bottom(double x) const;
  double top(double x) const;
};

// Builds the domain of a pair at a parameter in the closed plateau. Throws
// std::invalid_argument when alpha lies outside [A, B].
NatExtDomain build_domain(const MatchingPair& pair, double alpha);

// One step of the extension, (T(x), N/(d(x)+y)).
PlanarPoint natext_step(const MapParams& p, PlanarPoint pt);

// Inverse branch of digit j, (N/(x+j), N/y - j). Inverts natext_step on the
// image of the digit-j strip.
PlanarPoint natext_inverse(const MapParams& p, int j, PlanarPoint pt);

// Membership in the closed domain. Points on the boundary count as inside,
// with 1e-12 slack on the comparisons.
bool contains(const NatExtDomain& dom, PlanarPoint pt);

// Euclidean distance from pt to the boundary polygon.
double boundary_distance(const NatExtDomain& dom, PlanarPoint pt);

// Result of the random check that the images of the digit strips tile the
// domain. Every sampled point should have exactly one inverse-branch
// preimage inside the domain; samples with a candidate preimage within 1e-9
// of the boundary are excluded as numerically ambiguous rather than counted
// either way.
struct LaminationReport {
  long long samples;
  long long violations;
  long long boundary_excluded;
  int max_overlap;
};

LaminationReport check_lamination(const NatExtDomain& dom, long long samples,
                                  uint64_t seed);

// Axis-aligned rectangle [x_lo, x_hi] x [y_lo, y_hi].
struct Rect {
  double x_lo;
  double x_hi;
  double y_lo;
  double y_hi;

  bool contains(PlanarPoint pt) const {
    return x_lo <= pt.x && pt.x <= x_hi && y_lo <= pt.y && pt.y <= y_hi;
  }
  double width() const { return x_hi - x_lo; }
  double height() const { return y_hi - y_lo; }
  double area() const { return width() * height(); }
};

// Rectangles exchanged between the domains at two parameters alpha < beta in
// the same constant-k slice of a plateau. Passing from alpha to beta deletes
// the chain D0, D1, D2 from the alpha domain and adds the chain A0, A1, A2,
// where A1, A2 are successive images of A0 under the alpha extension and D1,
// D2 are images of D0 under the beta extension. One more step maps A2 and D2
// onto a common patch; final_added and final_deleted hold the two
// independently computed versions of it, equal up to roundoff.
struct QuiltPatches {
  Rect A0;
  Rect A1;
  Rect A2;
  Rect D0;
  Rect D1;
  Rect D2;
  Rect final_added;
  Rect final_deleted;
};

// Precomputed data for the quilting correspondence between the domains at
// alpha and beta. Requires alpha <= beta, both in the open plateau, and both
// in the same constant-k slice.
class QuiltingContext {
 public:
  QuiltingContext(const MatchingPair& pair, double alpha, double beta);

  const QuiltPatches& patches() const { return patches_; }
  int k() const { return k_; }
  const NatExtDomain& domain_alpha() const { return dom_alpha_; }
  const NatExtDomain& domain_beta() const { return dom_beta_; }

  // Carries a point of the beta domain to the alpha domain: identity off the
  // deleted chain, and on D_l the composition of 3-l forward beta steps with
  // 3-l inverse alpha branches. Throws std::domain_error when pt is not in
  // the beta domain.
  PlanarPoint map(PlanarPoint pt) const;

  // Inverse correspondence, from the alpha domain to the beta domain.
  PlanarPoint map_inverse(PlanarPoint pt) const;

  // Largest coordinate discrepancy between final_added and final_deleted.
  double residual() const;

 private:
  MatchingPair pair_;
  MapParams pa_;
  MapParams pb_;
  NatExtDomain dom_alpha_;
  NatExtDomain dom_beta_;
  QuiltPatches patches_;
  int k_;
};

QuiltPatches quilting_regions(const MatchingPair& pair, double alpha,
                              double beta);
PlanarPoint quilting_map(const MatchingPair& pair, double alpha, double beta,
                         PlanarPoint pt);
PlanarPoint quilting_map_inverse(const MatchingPair& pair, double alpha,
                                 double beta, PlanarPoint pt);
double verify_quilting(const MatchingPair& pair, double alpha, double beta);

}  // namespace nexp
