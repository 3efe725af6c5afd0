#pragma once

#include <cstdint>
#include <vector>

#include "nexp/core_map.hpp"

namespace nexp {

// Digit pair (d, d+i) for which the orbits of the two endpoints of the
// parameter interval merge after three steps. Such a pair satisfies the
// integer identity N(i-1) = d(d+i) with 1 <= d <= N-1 and i >= 2.
struct MatchingPair {
  int N;
  int d;
  long long i;

  // Throws std::invalid_argument unless N(i-1) = d(d+i) holds exactly with
  // N >= 2, 1 <= d <= N-1 and i >= 2.
  MatchingPair(int n, int d_, long long i_);
};

// All matching pairs of a given N together with the bound
// M(N) = (sigma0(N) - 1)(sigma0(N+1) - 1) on their number, where sigma0
// counts divisors. D = pairs.size() always satisfies D <= M.
struct PairEnumeration {
  int N;
  std::vector<MatchingPair> pairs;
  long long M;
};

// Enumerates matching pairs in increasing d. A candidate d yields a pair
// exactly when N - d divides d(d+1), giving i = d(d+1)/(N-d) + 1, kept when
// i >= 2.
PairEnumeration enumerate_matching_pairs(int N);

// Number of divisors of n.
long long divisor_count(long long n);

// Heights of the six horizontal levels attached to a matching pair, with
// 0 < A < B < C < D < E < F, E = A + 1 and F = B + 1. [A, B] is the closed
// parameter interval on which the entropy of the map is constant. All six
// values are evaluated through cancellation-free radical forms, so they stay
// accurate when d + i is large:
//   A = 2N / ((d+i+1) + sqrt((d+i+1)^2 + 4N))
//   B = 2(N-d) / ((d+1) + sqrt((d-1)^2 + 4N))
//   C = N(A+1) / (d+i+N)
//   D = 2N / ((d+1) + sqrt((d-1)^2 + 4N))
// The heights are linked by the fraction relations A = N/(d+i+E),
// B = N/(d+i+D), C = N/(d+i+A), D = N/(d+1+B), E = N/(d+C), F = N/(d+B).
struct PlateauHeights {
  double A;
  double B;
  double C;
  double D;
  double E;
  double F;

  double plateau_lo() const { return A; }
  double plateau_hi() const { return B; }
};

PlateauHeights plateau_heights(const MatchingPair& pair);

// B as the positive root of the quadratic
// (d+i) y^2 + (d+1)(d+i) y - N(d+1) = 0, an independent expression used to
// cross-check plateau_heights.
double plateau_b_quadratic(const MatchingPair& pair);

// Residuals of the four identities tying T to the plateau endpoints:
//   N/A - (d+i) = 1 + A          N/(A+1) - d = N/(A+d+i)
//   N/B - (d+i) = N/(B+d+1)      N/(B+1) - d = B
// Each field holds |lhs - rhs| for one identity.
struct EndpointIdentityResiduals {
  double at_a_left;
  double at_a_right;
  double at_b_left;
  double at_b_right;

  double max_abs() const;
};

EndpointIdentityResiduals endpoint_identities(const MatchingPair& pair);

// Where a parameter alpha sits relative to the plateau [A, B] of a pair.
// Inside the open plateau, k is the digit of T^2(alpha) and lies in
// {d, ..., d+i-1}, while T^2(alpha+1) has digit k+1. Within 1e-12 of either
// endpoint the parameter is flagged boundary and not a member, since the
// interiority conditions degenerate there.
struct AlphaClass {
  bool member;
  bool boundary;
  int k;  // meaningful only when member is true
};

// Decides membership two ways, through the orbit conditions
// T(alpha) interior to the d cylinder and T(alpha+1) interior to the d+i
// cylinder, and through the interval test A < alpha < B, and throws
// std::logic_error if the two disagree.
AlphaClass classify_alpha(const MatchingPair& pair, double alpha);

// |T^3(alpha) - T^3(alpha+1)| from two independently iterated orbits. Each
// orbit value is computed by composing its three visited branches into one
// integer Moebius transform applied exactly to the start point, so the
// result carries division roundoff only and stays meaningful when the
// branch derivatives are large.
double matching_defect(const MapParams& p);

// matching_defect restricted to members of the open plateau of the pair.
// Throws std::invalid_argument when alpha is not a member.
double verify_matching(const MatchingPair& pair, double alpha);

// Maximal sub-interval of the open plateau on which classify_alpha reports a
// fixed k. Boundaries between neighboring slices are refined by bisection.
struct PlateauSlice {
  int k;
  double lo;
  double hi;

  double mid() const { return 0.5 * (lo + hi); }
};

std::vector<PlateauSlice> plateau_slices(const MatchingPair& pair,
                                         int grid = 2048);

}  // namespace nexp
