#pragma once

#include <vector>

namespace nexp {

// Parameters of the N-expansion interval map with a finite digit set,
//
//   T(x) = N/x - d(x)  on  I = [alpha, alpha+1],   d(x) = floor(N/x - alpha),
//
// for integer N >= 2 and 0 < alpha <= sqrt(N) - 1. On that parameter range
// every point of I has a digit in a finite set {d_min, ..., d_max} and every
// branch of T is monotone decreasing.
struct MapParams {
  int N;
  double alpha;

  // Throws std::invalid_argument when N < 2 or alpha is outside (0, sqrt(N)-1].
  MapParams(int n, double a);

  double left() const { return alpha; }
  double right() const { return alpha + 1.0; }
};

// One application of the map: the landing point together with the digit that
// was consumed. In an orbit, step k holds (T^{k+1}(x0), d_{k+1}).
struct OrbitStep {
  double x;
  int digit;
};

// Smallest and largest digit attained on [alpha, alpha+1].
struct DigitRange {
  int d_min;
  int d_max;

  int count() const { return d_max - d_min + 1; }
};

// Set of points sharing a first digit. Cylinders are half open, (lo, hi],
// except the largest-digit cylinder, which is clipped to a closed left end
// at alpha.
struct Cylinder {
  double lo;
  double hi;
  bool closed_lo;

  bool contains(double x) const {
    return (closed_lo ? x >= lo : x > lo) && x <= hi;
  }
  double width() const { return hi - lo; }
};

// Digit of x, the unique d with N/x - d in [alpha, alpha+1). At an exact
// cylinder boundary x = N/(alpha+1+d) the value N/x - alpha is an integer and
// the larger digit d+1 is returned, matching the half-open cylinder
// convention. A 1e-12 nudge inside the floor keeps that convention stable
// when rounding lands one ulp below an integer, which also absorbs off-by-one
// digits within 1e-12 of the interval endpoints.
// Throws std::domain_error when x lies outside [alpha, alpha+1].
int digit(const MapParams& p, double x);

// One step of the map. The returned point lies in [alpha, alpha+1).
OrbitStep gauss_step(const MapParams& p, double x);

// n successive steps starting from x. Step k carries the landing point
// T^{k+1}(x) and the digit consumed to get there. n = 0 yields an empty
// sequence.
std::vector<OrbitStep> orbit(const MapParams& p, double x, int n);

// d_min = digit(alpha+1), d_max = digit(alpha).
DigitRange digit_range(const MapParams& p);

// Cylinder of digit j, (N/(alpha+1+j), N/(alpha+j)] intersected with
// [alpha, alpha+1]. Throws std::invalid_argument when j is outside the digit
// range.
Cylinder cylinder(const MapParams& p, int j);

// Inverse of the digit-j branch, y -> N/(y+j). The result lies in the
// cylinder of j only when that branch is active at y, which the caller
// checks via cylinder().
double branch_inverse(const MapParams& p, int j, double y);

// Fixed point of the digit-i branch, the positive root of N/f - i = f,
// namely (sqrt(4N+i^2) - i)/2 evaluated in the cancellation-free form.
double fixed_point(int N, int i);

}  // namespace nexp
