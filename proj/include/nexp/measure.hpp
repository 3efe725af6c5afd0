#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nexp/core_map.hpp"
#include "nexp/matching.hpp"

namespace nexp {

// Dilogarithm Li2(x) = sum_{k>=1} x^k / k^2 for x <= 1, analytically
// continued to all x < -1. Direct series below |x| = 1/2, standard
// reflection and inversion identities elsewhere. Absolute accuracy 1e-13.
// Throws std::domain_error for x > 1.
double dilog(double x);

// Integral of log(x) M/(N + Mx) over [n, m] through the antiderivative
// Li2(-(M/N)x) + log(x) log(1 + (M/N)x). Requires M >= 0, N > 0 and
// 0 < n, m.
double log_integral(double M, double N, double n, double m);

// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol);

// Normalizing constant H of the planar invariant density H N/(N + xy)^2 on
// the natural extension domain of a pair,
//   1/H = 2 log A + 2 log(B+1) - log(N - (A+1)d) - log(N - (d+i)B).
double normalizing_constant(const MatchingPair& pair);

// The planar density H N/(N + xy)^2.
double density_2d(int N, double H, double x, double y);

// One term sign * level / (N + level * x) of the marginal density, supported
// on [lo, hi].
struct DensityTerm {
  int sign;
  double level;
  double lo;
  double hi;
};

// Invariant density of the interval map, the fiberwise integral of the
// planar density. Piecewise it is a signed sum of terms level/(N + level x)
// with levels drawn from {A, ..., F}; evaluation treats each support
// interval as closed on the left and open on the right, except at
// alpha + 1. Integrates to 1 over [alpha, alpha+1].
struct PiecewiseLogDensity {
  int N;
  double alpha;
  double H;
  std::vector<DensityTerm> terms;
  std::vector<double> breakpoints;  // sorted, deduplicated support edges

  double operator()(double x) const;
};

// Builds the marginal density at a parameter in the closed plateau. The term
// supports follow the top and bottom profiles of the natural extension
// domain, so the plateau endpoints produce the collapsed four-term and
// three-term versions automatically.
PiecewiseLogDensity density_1d(const MatchingPair& pair, double alpha);

// Integral of the density over its interval, term by term through
// log(N + level x). Equals 1 up to roundoff.
double density_normalization_exact(const PiecewiseLogDensity& f);

// The same integral by adaptive Simpson quadrature split at the
// breakpoints. Used to check normalization without leaning on the
// closed-form antiderivative.
double density_normalization(const PiecewiseLogDensity& f, double tol = 1e-10);

// |f(x) - sum_j f(N/(x+j)) N/(x+j)^2| where j ranges over the digits whose
// branch is active at x. Vanishes when f is the invariant density.
double transfer_residual(const MatchingPair& pair, double alpha,
                         const PiecewiseLogDensity& f, double x);

// Entropy of the map for parameters in the plateau of the pair,
//   h = log N - 2H ( I(E; B, B+1) - I(A; B, D) - I(C; D, B+1) ),
// where I(M; n, m) = log_integral(M, N, n, m).
double entropy_closed_form(const MatchingPair& pair);

// Time average of log N - 2 log x along a random orbit: the start point is
// drawn uniformly from (alpha, alpha+1), burn_in steps are discarded, and
// the next `iterations` points are averaged, beginning with the point
// reached after burn-in.
double entropy_birkhoff(const MapParams& p, long long iterations,
                        long long burn_in, uint64_t seed);

constexpr long long kDefaultBurnIn = 1000;

struct EntropyResult {
  double closed_form;
  bool has_estimate;
  double birkhoff_estimate;
  long long iterations;
  uint64_t seed;
};

struct SweepRow {
  double alpha;
  double entropy;
  long long iterations;
  uint64_t seed;
};

// Birkhoff estimates over an inclusive uniform grid of `steps` parameters.
// Row t draws from the stream derive_stream_seed(base_seed, t), so a row's
// value depends only on the base seed and its own index.
std::vector<SweepRow> entropy_sweep(int N, double lo, double hi, int steps,
                                    long long iterations, uint64_t base_seed);

}  // namespace nexp
