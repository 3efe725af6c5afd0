#include "nexp/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "nexp/natext.hpp"
#include "nexp/rng.hpp"

namespace nexp {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// Direct series, valid for |x| <= 1/2 and rapidly convergent there.
double dilog_series(double x) {
  double term = x;
  double sum = 0.0;
  for (int k = 1; k <= 60; ++k) {
    sum += term / (static_cast<double>(k) * k);
    term *= x;
    if (std::abs(term) < 1e-18) {
      break;
    }
  }
  return sum;
}

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double integrate_rec(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return integrate_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         integrate_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double dilog(double x) {
  if (x > 1.0 + 1e-15) {
    throw std::domain_error("dilog: argument " + std::to_string(x) +
                            " exceeds 1");
  }
  if (x >= 1.0 - 1e-15) {
    return kPi2Over6;
  }
  if (x < -1.0) {
    const double lx = std::log(-x);
    return -kPi2Over6 - 0.5 * lx * lx - dilog(1.0 / x);
  }
  if (x < -0.5) {
    const double l1mx = std::log1p(-x);
    return -dilog(x / (x - 1.0)) - 0.5 * l1mx * l1mx;
  }
  if (x > 0.5) {
    return kPi2Over6 - std::log(x) * std::log1p(-x) - dilog(1.0 - x);
  }
  return dilog_series(x);
}

double log_integral(double M, double N, double n, double m) {
  if (!(M >= 0.0) || !(N > 0.0) || !(n > 0.0) || !(m > 0.0)) {
    throw std::invalid_argument(
        "log_integral: requires M >= 0, N > 0 and positive bounds");
  }
  const double c = M / N;
  auto antiderivative = [&](double x) {
    return dilog(-c * x) + std::log(x) * std::log1p(c * x);
  };
  return antiderivative(m) - antiderivative(n);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  if (!(tol > 0.0)) {
    throw std::invalid_argument("integrate: tolerance must be positive");
  }
  if (a == b) {
    return 0.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return integrate_rec(f, a, fa, b, fb, m, fm, whole, tol, 48);
}

double normalizing_constant(const MatchingPair& pair) {
  const PlateauHeights h = plateau_heights(pair);
  const double N = pair.N;
  const double d = pair.d;
  const double di = pair.d + static_cast<double>(pair.i);
  const double arg1 = N - (h.A + 1.0) * d;
  const double arg2 = N - di * h.B;
  if (!(arg1 > 0.0) || !(arg2 > 0.0)) {
    throw std::logic_error("normalizing_constant: log argument not positive");
  }
  const double inv = 2.0 * std::log(h.A) + 2.0 * std::log(h.B + 1.0) -
                     std::log(arg1) - std::log(arg2);
  return 1.0 / inv;
}

double density_2d(int N, double H, double x, double y) {
  const double w = N + x * y;
  return H * N / (w * w);
}

double PiecewiseLogDensity::operator()(double x) const {
  const double right = alpha + 1.0;
  if (x < alpha - 1e-9 || x > right + 1e-9) {
    throw std::domain_error("PiecewiseLogDensity: x=" + std::to_string(x) +
                            " outside [alpha, alpha+1]");
  }
  double sum = 0.0;
  for (const DensityTerm& t : terms) {
    const bool closed_right = t.hi >= right - 1e-15;
    if (x >= t.lo && (x < t.hi || closed_right)) {
      sum += t.sign * t.level / (N + t.level * x);
    }
  }
  return H * sum;
}

PiecewiseLogDensity density_1d(const MatchingPair& pair, double alpha) {
  const NatExtDomain dom = build_domain(pair, alpha);
  const PlateauHeights& h = dom.heights;
  const double a = alpha;
  const double b = alpha + 1.0;

  PiecewiseLogDensity f;
  f.N = pair.N;
  f.alpha = alpha;
  f.H = normalizing_constant(pair);

  auto add = [&f](int sign, double level, double lo, double hi) {
    if (hi - lo > 1e-14) {
      f.terms.push_back({sign, level, lo, hi});
    }
  };
  add(+1, h.D, a, dom.t1_right);
  add(+1, h.E, dom.t1_right, dom.f_run_empty ? b : dom.t2_left);
  if (!dom.f_run_empty) {
    add(+1, h.F, dom.t2_left, b);
  }
  add(-1, h.A, a, dom.t2_right);
  add(-1, h.B, dom.t2_right, dom.t1_left);
  add(-1, h.C, dom.t1_left, b);

  std::vector<double> edges;
  for (const DensityTerm& t : f.terms) {
    edges.push_back(t.lo);
    edges.push_back(t.hi);
  }
  std::sort(edges.begin(), edges.end());
  for (double e : edges) {
    if (f.breakpoints.empty() || e - f.breakpoints.back() > 1e-13) {
      f.breakpoints.push_back(e);
    }
  }
  return f;
}

double density_normalization_exact(const PiecewiseLogDensity& f) {
  double total = 0.0;
  for (const DensityTerm& t : f.terms) {
    total += t.sign * (std::log(f.N + t.level * t.hi) -
                       std::log(f.N + t.level * t.lo));
  }
  return f.H * total;
}

double density_normalization(const PiecewiseLogDensity& f, double tol) {
  double total = 0.0;
  const size_t pieces = f.breakpoints.size();
  for (size_t s = 0; s + 1 < pieces; ++s) {
    const double lo = f.breakpoints[s];
    const double hi = f.breakpoints[s + 1];
    total += integrate([&f](double x) { return f(x); }, lo, hi,
                       tol / static_cast<double>(pieces));
  }
  return total;
}

double transfer_residual(const MatchingPair& pair, double alpha,
                         const PiecewiseLogDensity& f, double x) {
  const MapParams p(pair.N, alpha);
  const DigitRange r = digit_range(p);
  double sum = 0.0;
  for (int j = r.d_min; j <= r.d_max; ++j) {
    const Cylinder c = cylinder(p, j);
    if (c.width() <= 0.0) {
      continue;
    }
    const double w = p.N / (x + j);
    if (!c.contains(w)) {
      continue;
    }
    sum += f(w) * p.N / ((x + j) * (x + j));
  }
  return std::abs(f(x) - sum);
}

double entropy_closed_form(const MatchingPair& pair) {
  const PlateauHeights h = plateau_heights(pair);
  const double N = pair.N;
  const double H = normalizing_constant(pair);
  const double bracket = log_integral(h.E, N, h.B, h.F) -
                         log_integral(h.A, N, h.B, h.D) -
                         log_integral(h.C, N, h.D, h.F);
  return std::log(N) - 2.0 * H * bracket;
}

double entropy_birkhoff(const MapParams& p, long long iterations,
                        long long burn_in, uint64_t seed) {
  if (iterations < 1 || burn_in < 0) {
    throw std::invalid_argument(
        "entropy_birkhoff: requires iterations >= 1 and burn_in >= 0");
  }
  Rng rng(seed);
  double x = p.alpha + rng.uniform01();
  if (x <= p.alpha) {
    x = std::nextafter(p.alpha, p.alpha + 1.0);
  }
  for (long long t = 0; t < burn_in; ++t) {
    x = gauss_step(p, x).x;
  }
  double sum_log = 0.0;
  for (long long t = 0; t < iterations; ++t) {
    sum_log += std::log(x);
    x = gauss_step(p, x).x;
  }
  return std::log(static_cast<double>(p.N)) -
         2.0 * sum_log / static_cast<double>(iterations);
}

std::vector<SweepRow> entropy_sweep(int N, double lo, double hi, int steps,
                                    long long iterations, uint64_t base_seed) {
  if (steps < 2) {
    throw std::invalid_argument("entropy_sweep: steps must be >= 2");
  }
  if (!(lo <= hi)) {
    throw std::invalid_argument("entropy_sweep: requires lo <= hi");
  }
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    const double a = lo + (hi - lo) * t / (steps - 1);
    const uint64_t s = derive_stream_seed(base_seed, static_cast<uint64_t>(t));
    const MapParams p(N, a);
    rows.push_back({a, entropy_birkhoff(p, iterations, kDefaultBurnIn, s),
                    iterations, s});
  }
  return rows;
}

}  // namespace nexp
