#pragma once

// Reference implementations used only by the tests. Each one recomputes a
// quantity along a route independent of the library code it checks: pair
// enumeration by direct divisibility of d^2+N, orbits by the raw recurrence
// with no boundary handling, integrals by Romberg extrapolation, and the
// dilogarithm by quadrature of its defining integral.

#include <cmath>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oracle {

// Matching pairs of N: d in [1, N-1] with (d^2 + N) divisible by N - d and
// quotient i >= 2.
inline std::vector<std::pair<int, long long>> matching_pairs(int N) {
  std::vector<std::pair<int, long long>> out;
  for (int d = 1; d <= N - 1; ++d) {
    const long long num = static_cast<long long>(d) * d + N;
    const long long den = N - d;
    if (num % den == 0) {
      const long long i = num / den;
      if (i >= 2) {
        out.emplace_back(d, i);
      }
    }
  }
  return out;
}

// n steps of x -> N/x - floor(N/x - alpha), no boundary snapping.
inline double orbit_point(int N, double alpha, double x, int n) {
  for (int s = 0; s < n; ++s) {
    const double d = std::floor(N / x - alpha);
    x = N / x - d;
  }
  return x;
}

// Romberg integration on [a, b]. Smooth integrands only.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, int levels = 20) {
  const int K = levels;
  std::vector<std::vector<double>> R(K, std::vector<double>(K, 0.0));
  double h = b - a;
  R[0][0] = 0.5 * h * (f(a) + f(b));
  for (int k = 1; k < K; ++k) {
    h *= 0.5;
    double s = 0.0;
    const long long half_points = 1LL << (k - 1);
    for (long long j = 1; j <= half_points; ++j) {
      s += f(a + (2 * j - 1) * h);
    }
    R[k][0] = 0.5 * R[k - 1][0] + h * s;
    double pow4 = 1.0;
    for (int m = 1; m <= k; ++m) {
      pow4 *= 4.0;
      R[k][m] = R[k][m - 1] + (R[k][m - 1] - R[k - 1][m - 1]) / (pow4 - 1.0);
    }
  }
  return R[K - 1][K - 1];
}

// Li2 through its integral -int_0^x log(1-t)/t dt, valid for x < 1.
inline double dilog_by_quadrature(double x) {
  auto integrand = [](double t) {
    if (std::abs(t) < 1e-6) {
      return 1.0 + t * (0.5 + t * (1.0 / 3.0 + t * 0.25));
    }
    return -std::log1p(-t) / t;
  };
  if (x >= 0.0) {
    return integrate(integrand, 0.0, x);
  }
  return -integrate(integrand, x, 0.0);
}

}  // namespace oracle
