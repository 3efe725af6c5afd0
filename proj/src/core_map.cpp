#include "nexp/core_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nexp {

namespace {

// Tolerance for the half-open digit convention at exact cylinder boundaries.
constexpr double kBoundarySnap = 1e-12;
// Slack accepted on domain membership checks before rejecting a point.
constexpr double kDomainSlack = 1e-9;

}  // namespace

MapParams::MapParams(int n, double a) : N(n), alpha(a) {
  if (n < 2) {
    throw std::invalid_argument("MapParams: N must be an integer >= 2");
  }
  const double limit = std::sqrt(static_cast<double>(n)) - 1.0;
  if (!(a > 0.0) || a > limit + kBoundarySnap) {
    throw std::invalid_argument(
        "MapParams: alpha must lie in (0, sqrt(N)-1], got alpha=" +
        std::to_string(a) + " for N=" + std::to_string(n));
  }
}

int digit(const MapParams& p, double x) {
  if (x < p.alpha - kDomainSlack || x > p.alpha + 1.0 + kDomainSlack) {
    throw std::domain_error("digit: x=" + std::to_string(x) +
                            " outside [alpha, alpha+1] for alpha=" +
                            std::to_string(p.alpha));
  }
  const double xx = std::clamp(x, p.alpha, p.alpha + 1.0);
  return static_cast<int>(std::floor(p.N / xx - p.alpha + kBoundarySnap));
}

OrbitStep gauss_step(const MapParams& p, double x) {
  const int d = digit(p, x);
  const double xx = std::clamp(x, p.alpha, p.alpha + 1.0);
  double value = p.N / xx - d;
  if (value < p.alpha) {
    value = p.alpha;
  } else if (value >= p.alpha + 1.0) {
    value = std::nextafter(p.alpha + 1.0, p.alpha);
  }
  return {value, d};
}

std::vector<OrbitStep> orbit(const MapParams& p, double x, int n) {
  if (n < 0) {
    throw std::invalid_argument("orbit: step count must be >= 0");
  }
  std::vector<OrbitStep> steps;
  steps.reserve(static_cast<size_t>(n));
  double cur = x;
  for (int k = 0; k < n; ++k) {
    const OrbitStep s = gauss_step(p, cur);
    steps.push_back(s);
    cur = s.x;
  }
  return steps;
}

DigitRange digit_range(const MapParams& p) {
  return {digit(p, p.alpha + 1.0), digit(p, p.alpha)};
}

Cylinder cylinder(const MapParams& p, int j) {
  const DigitRange r = digit_range(p);
  if (j < r.d_min || j > r.d_max) {
    throw std::invalid_argument("cylinder: digit " + std::to_string(j) +
                                " outside [" + std::to_string(r.d_min) + ", " +
                                std::to_string(r.d_max) + "]");
  }
  double lo = p.N / (p.alpha + 1.0 + j);
  double hi = p.N / (p.alpha + j);
  bool closed_lo = false;
  if (lo <= p.alpha) {
    lo = p.alpha;
    closed_lo = true;
  }
  hi = std::min(hi, p.alpha + 1.0);
  hi = std::max(hi, lo);
  return {lo, hi, closed_lo};
}

double branch_inverse(const MapParams& p, int j, double y) {
  return p.N / (y + j);
}

double fixed_point(int N, int i) {
  if (N < 2 || i < 1) {
    throw std::invalid_argument("fixed_point: requires N >= 2 and i >= 1");
  }
  const double nn = static_cast<double>(N);
  const double ii = static_cast<double>(i);
  return 2.0 * nn / (std::sqrt(4.0 * nn + ii * ii) + ii);
}

}  // namespace nexp
