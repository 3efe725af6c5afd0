#include "nexp/matching.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nexp {

namespace {

constexpr double kEndpointSnap = 1e-12;

// Open interval (max(alpha, N/(alpha+1+j)), min(alpha+1, N/(alpha+j))), the
// interior of the digit-j cylinder. Built from the raw branch formulas so it
// is usable for digits outside the active range, where it comes out empty.
bool interior_of_cylinder(const MapParams& p, long long j, double x) {
  const double lo = std::max(p.alpha, p.N / (p.alpha + 1.0 + j));
  const double hi = std::min(p.alpha + 1.0, p.N / (p.alpha + j));
  return lo < x && x < hi;
}

// True when x lies within slack of a cut between two digit cylinders, where
// floor-based digit readings are allowed to disagree across an orbit.
bool near_cylinder_cut(const MapParams& p, double x, double slack) {
  const DigitRange r = digit_range(p);
  for (int j = r.d_min; j <= r.d_max + 1; ++j) {
    if (std::abs(x - p.N / (p.alpha + j)) < slack) return true;
  }
  return false;
}

}  // namespace

MatchingPair::MatchingPair(int n, int d_, long long i_) : N(n), d(d_), i(i_) {
  if (n < 2 || d_ < 1 || d_ > n - 1 || i_ < 2) {
    throw std::invalid_argument(
        "MatchingPair: requires N >= 2, 1 <= d <= N-1 and i >= 2");
  }
  const long long lhs = static_cast<long long>(n) * (i_ - 1);
  const long long rhs = static_cast<long long>(d_) * (d_ + i_);
  if (lhs != rhs) {
    throw std::invalid_argument("MatchingPair: N(i-1) != d(d+i) for N=" +
                                std::to_string(n) + ", d=" + std::to_string(d_) +
                                ", i=" + std::to_string(i_));
  }
}

long long divisor_count(long long n) {
  if (n < 1) {
    throw std::invalid_argument("divisor_count: requires n >= 1");
  }
  long long count = 0;
  for (long long a = 1; a * a <= n; ++a) {
    if (n % a == 0) {
      count += (a * a == n) ? 1 : 2;
    }
  }
  return count;
}

PairEnumeration enumerate_matching_pairs(int N) {
  if (N < 2) {
    throw std::invalid_argument("enumerate_matching_pairs: requires N >= 2");
  }
  PairEnumeration out;
  out.N = N;
  for (int d = 1; d <= N - 1; ++d) {
    const long long k = N - d;
    const long long prod = static_cast<long long>(d) * (d + 1);
    if (prod % k != 0) {
      continue;
    }
    const long long i = prod / k + 1;
    if (i >= 2) {
      out.pairs.emplace_back(N, d, i);
    }
  }
  out.M = (divisor_count(N) - 1) * (divisor_count(N + 1LL) - 1);
  return out;
}

PlateauHeights plateau_heights(const MatchingPair& pair) {
  const double N = pair.N;
  const double d = pair.d;
  const double di = pair.d + static_cast<double>(pair.i);
  const double root_a = std::sqrt((di + 1.0) * (di + 1.0) + 4.0 * N);
  const double root_b = std::sqrt((d - 1.0) * (d - 1.0) + 4.0 * N);
  PlateauHeights h;
  h.A = 2.0 * N / (di + 1.0 + root_a);
  h.B = 2.0 * (N - d) / (d + 1.0 + root_b);
  h.C = N * (h.A + 1.0) / (di + N);
  h.D = 2.0 * N / (d + 1.0 + root_b);
  h.E = h.A + 1.0;
  h.F = h.B + 1.0;
  if (!(0.0 < h.A && h.A < h.B && h.B < h.C && h.C < h.D && h.D < h.E &&
        h.E < h.F)) {
    throw std::logic_error("plateau_heights: height ordering failed");
  }
  return h;
}

double plateau_b_quadratic(const MatchingPair& pair) {
  const double N = pair.N;
  const double dp1 = pair.d + 1.0;
  const double di = pair.d + static_cast<double>(pair.i);
  const double b = dp1 * di;
  return 2.0 * N * dp1 / (b + std::sqrt(b * b + 4.0 * di * N * dp1));
}

double EndpointIdentityResiduals::max_abs() const {
  return std::max(std::max(at_a_left, at_a_right),
                  std::max(at_b_left, at_b_right));
}

EndpointIdentityResiduals endpoint_identities(const MatchingPair& pair) {
  const PlateauHeights h = plateau_heights(pair);
  const double N = pair.N;
  const double d = pair.d;
  const double di = pair.d + static_cast<double>(pair.i);
  EndpointIdentityResiduals r;
  r.at_a_left = std::abs(N / h.A - di - (1.0 + h.A));
  r.at_a_right = std::abs(N / (h.A + 1.0) - d - N / (h.A + di));
  r.at_b_left = std::abs(N / h.B - di - N / (h.B + d + 1.0));
  r.at_b_right = std::abs(N / (h.B + 1.0) - d - h.B);
  return r;
}

AlphaClass classify_alpha(const MatchingPair& pair, double alpha) {
  const PlateauHeights h = plateau_heights(pair);
  if (std::abs(alpha - h.A) < kEndpointSnap ||
      std::abs(alpha - h.B) < kEndpointSnap) {
    return {false, true, 0};
  }
  const bool interval_member = h.A < alpha && alpha < h.B;

  const double limit = std::sqrt(static_cast<double>(pair.N)) - 1.0;
  if (!(alpha > 0.0) || alpha > limit + kEndpointSnap) {
    if (interval_member) {
      throw std::logic_error(
          "classify_alpha: plateau extends beyond the parameter range");
    }
    return {false, false, 0};
  }

  const MapParams p(pair.N, alpha);
  const double t1_left = gauss_step(p, alpha).x;
  const double t1_right = gauss_step(p, alpha + 1.0).x;
  const bool orbit_member = interior_of_cylinder(p, pair.d, t1_left) &&
                            interior_of_cylinder(p, pair.d + pair.i, t1_right);
  if (orbit_member != interval_member) {
    throw std::logic_error(
        "classify_alpha: orbit and interval membership tests disagree at "
        "alpha=" +
        std::to_string(alpha));
  }
  if (!interval_member) {
    return {false, false, 0};
  }

  const double t2_left = gauss_step(p, t1_left).x;
  const double t2_right = gauss_step(p, t1_right).x;
  int k = digit(p, t2_left);
  const int k_right = digit(p, t2_right);
  if (k_right != k + 1 || k < pair.d ||
      static_cast<long long>(k) > pair.d + pair.i - 1) {
    // At a cut between two branch slices the second orbit points sit on
    // digit boundaries and their floor readings need not move in lockstep.
    // Such alpha are legitimate members; settle the branch index by clamping.
    if (near_cylinder_cut(p, t2_left, 1e-9) ||
        near_cylinder_cut(p, t2_right, 1e-9)) {
      k = std::max(k, pair.d);
      k = static_cast<int>(
          std::min<long long>(k, pair.d + pair.i - 1));
      return {true, false, k};
    }
    throw std::logic_error(
        "classify_alpha: second-orbit digits violate the matching pattern at "
        "alpha=" +
        std::to_string(alpha));
  }
  return {true, false, k};
}

namespace {

// T^3 of the exact rational m 2^-j, with the roundoff of a single division.
// The three visited branches compose to one Moebius transform with integer
// coefficients; the transform is accumulated and applied in extended integer
// arithmetic. Direct double iteration instead loses up to 1e-7 near plateaux
// with small alpha: the start point alpha+1 alone carries half an ulp of
// representation error and each step multiplies errors by the branch
// derivative. Falls back to direct iteration from `approx` when the
// coefficients would overflow the 128-bit products, which needs digits
// beyond any plateau digit set.
double three_step_point(const MapParams& p, __int128 m, int j, double approx) {
  const __int128 kCoeffCap = static_cast<__int128>(1) << 60;
  const __int128 scale = static_cast<__int128>(1) << j;
  __int128 a = 1, b = 0, c = 0, e = 1;
  double x = approx;
  for (int step = 0; step < 3; ++step) {
    const int d = digit(p, x);
    const __int128 na = -static_cast<__int128>(d) * a + p.N * c;
    const __int128 nb = -static_cast<__int128>(d) * b + p.N * e;
    c = a;
    e = b;
    a = na;
    b = nb;
    if (na > kCoeffCap || -na > kCoeffCap || nb > kCoeffCap ||
        -nb > kCoeffCap) {
      for (int rest = step; rest < 3; ++rest) x = gauss_step(p, x).x;
      return x;
    }
    const __int128 num = a * m + b * scale;
    const __int128 den = c * m + e * scale;
    x = static_cast<double>(num) / static_cast<double>(den);
  }
  return x;
}

}  // namespace

double matching_defect(const MapParams& p) {
  int exp = 0;
  const double mant = std::frexp(p.alpha, &exp);
  const int j = 53 - exp;
  if (j < 0 || j > 62) {
    double left = p.alpha;
    double right = p.alpha + 1.0;
    for (int step = 0; step < 3; ++step) {
      left = gauss_step(p, left).x;
      right = gauss_step(p, right).x;
    }
    return std::abs(left - right);
  }
  const __int128 m = static_cast<__int128>(std::ldexp(mant, 53));
  const __int128 one = static_cast<__int128>(1) << j;
  return std::abs(three_step_point(p, m, j, p.alpha) -
                  three_step_point(p, m + one, j, p.alpha + 1.0));
}

double verify_matching(const MatchingPair& pair, double alpha) {
  const AlphaClass c = classify_alpha(pair, alpha);
  if (!c.member) {
    throw std::invalid_argument(
        "verify_matching: alpha=" + std::to_string(alpha) +
        " is not in the open plateau");
  }
  return matching_defect(MapParams(pair.N, alpha));
}

std::vector<PlateauSlice> plateau_slices(const MatchingPair& pair, int grid) {
  if (grid < 8) {
    throw std::invalid_argument("plateau_slices: grid must be >= 8");
  }
  const PlateauHeights h = plateau_heights(pair);
  const double width = h.B - h.A;

  std::vector<double> xs;
  std::vector<int> ks;
  for (int t = 1; t < grid; ++t) {
    const double a = h.A + width * t / grid;
    const AlphaClass c = classify_alpha(pair, a);
    if (c.member) {
      xs.push_back(a);
      ks.push_back(c.k);
    }
  }
  if (xs.empty()) {
    return {};
  }

  // Bisect for the parameter where k switches between two grid neighbors.
  auto refine = [&](double lo, int k_lo, double hi) {
    for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
      const double mid = 0.5 * (lo + hi);
      const AlphaClass c = classify_alpha(pair, mid);
      if (c.member && c.k == k_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  std::vector<PlateauSlice> slices;
  double run_lo = h.A;
  for (size_t idx = 1; idx <= xs.size(); ++idx) {
    if (idx < xs.size() && ks[idx] == ks[idx - 1]) {
      continue;
    }
    double run_hi = h.B;
    if (idx < xs.size()) {
      run_hi = refine(xs[idx - 1], ks[idx - 1], xs[idx]);
    }
    slices.push_back({ks[idx - 1], run_lo, run_hi});
    run_lo = run_hi;
  }
  return slices;
}

}  // namespace nexp
