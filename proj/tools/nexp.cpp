// Command-line front end: pair enumeration, plateau reports, verification
// suites, entropy estimates and sweeps, gap detection, and domain plots.
//
// Exit codes: 0 success, 1 verification or convergence failure, 2 usage or
// parameter error, 3 I/O error.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nexp/core_map.hpp"
#include "nexp/gaps.hpp"
#include "nexp/matching.hpp"
#include "nexp/measure.hpp"
#include "nexp/natext.hpp"
#include "nexp/rng.hpp"

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

uint64_t seed_from_environment() {
  const char* raw = std::getenv("NEXP_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0') {
    throw std::invalid_argument("NEXP_SEED must be an unsigned integer");
  }
  return v;
}

// Writes text to path, or to stdout when path is empty.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fputs(text.c_str(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out.good()) throw IoError("write failed for " + path);
}

int cmd_enumerate(int N) {
  const nexp::PairEnumeration e = nexp::enumerate_matching_pairs(N);
  std::ostringstream out;
  out << "{\n"
      << "  \"N\": " << e.N << ",\n"
      << "  \"D\": " << e.pairs.size() << ",\n"
      << "  \"M\": " << e.M << ",\n"
      << "  \"pairs\": [";
  for (std::size_t t = 0; t < e.pairs.size(); ++t) {
    const nexp::MatchingPair& pr = e.pairs[t];
    const nexp::PlateauHeights h = nexp::plateau_heights(pr);
    out << (t == 0 ? "\n" : ",\n");
    out << "    {\"d\": " << pr.d << ", \"i\": " << pr.i << ", \"A\": "
        << fmt(h.A) << ", \"B\": " << fmt(h.B) << ", \"H\": "
        << fmt(nexp::normalizing_constant(pr)) << ", \"h\": "
        << fmt(nexp::entropy_closed_form(pr)) << "}";
  }
  out << "\n  ]\n}\n";
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

int cmd_plateau(int N, int d, long long i) {
  const nexp::MatchingPair pr(N, d, i);
  const nexp::PlateauHeights h = nexp::plateau_heights(pr);
  std::ostringstream out;
  out << "A=" << fmt(h.A) << "\nB=" << fmt(h.B) << "\nC=" << fmt(h.C)
      << "\nD=" << fmt(h.D) << "\nE=" << fmt(h.E) << "\nF=" << fmt(h.F)
      << "\nH=" << fmt(nexp::normalizing_constant(pr)) << "\nh="
      << fmt(nexp::entropy_closed_form(pr)) << "\n";
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

int cmd_classify(int N, int d, long long i, double alpha) {
  const nexp::AlphaClass c =
      nexp::classify_alpha(nexp::MatchingPair(N, d, i), alpha);
  std::printf("member=%s\nboundary=%s\nk=%d\n", c.member ? "true" : "false",
              c.boundary ? "true" : "false", c.k);
  return 0;
}

int cmd_entropy(int N, int d, long long i, std::optional<double> alpha,
                long long iters, uint64_t seed) {
  const nexp::MatchingPair pr(N, d, i);
  std::printf("closed_form=%s\n", fmt(nexp::entropy_closed_form(pr)).c_str());
  if (alpha.has_value()) {
    const nexp::MapParams p(N, *alpha);
    const double est =
        nexp::entropy_birkhoff(p, iters, nexp::kDefaultBurnIn, seed);
    std::printf("alpha=%s\nestimate=%s\niterations=%lld\nseed=%llu\n",
                fmt(*alpha).c_str(), fmt(est).c_str(), iters,
                static_cast<unsigned long long>(seed));
  }
  return 0;
}

std::string sweep_csv(const std::vector<nexp::SweepRow>& rows) {
  std::string out = "alpha,entropy,iterations,seed\n";
  for (const nexp::SweepRow& r : rows) {
    out += fmt(r.alpha);
    out += ',';
    out += fmt(r.entropy);
    out += ',';
    out += std::to_string(r.iterations);
    out += ',';
    out += std::to_string(r.seed);
    out += '\n';
  }
  return out;
}

// Minimal static polyline plot with labeled min/max ticks on both axes.
std::string sweep_svg(const std::vector<nexp::SweepRow>& rows) {
  const double kW = 800.0, kH = 500.0, kL = 70.0, kR = 20.0, kT = 20.0,
               kB = 50.0;
  double x_lo = rows.front().alpha, x_hi = rows.back().alpha;
  double y_lo = rows.front().entropy, y_hi = rows.front().entropy;
  for (const nexp::SweepRow& r : rows) {
    y_lo = std::min(y_lo, r.entropy);
    y_hi = std::max(y_hi, r.entropy);
  }
  if (y_hi - y_lo < 1e-12) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const auto px = [&](double a) {
    return kL + (a - x_lo) / (x_hi - x_lo) * (kW - kL - kR);
  };
  const auto py = [&](double h) {
    return kH - kB - (h - y_lo) / (y_hi - y_lo) * (kH - kT - kB);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kH - kB << "\" x2=\"" << kW - kR
      << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kL << "\" y1=\"" << kT << "\" x2=\"" << kL
      << "\" y2=\"" << kH - kB << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << px(x_lo) << "\" y=\"" << kH - kB + 20
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(x_lo)
      << "</text>\n";
  out << "<text x=\"" << px(x_hi) << "\" y=\"" << kH - kB + 20
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(x_hi)
      << "</text>\n";
  out << "<text x=\"" << kL - 8 << "\" y=\"" << py(y_lo) + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(y_lo)
      << "</text>\n";
  out << "<text x=\"" << kL - 8 << "\" y=\"" << py(y_hi) + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(y_hi)
      << "</text>\n";
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" "
         "points=\"";
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (t > 0) out << ' ';
    out << fmt6(px(rows[t].alpha)) << ',' << fmt6(py(rows[t].entropy));
  }
  out << "\"/>\n</svg>\n";
  return out.str();
}

int cmd_sweep(int N, double from, double to, long long steps, long long iters,
              uint64_t seed, const std::string& out_path,
              const std::string& svg_path) {
  const auto rows = nexp::entropy_sweep(N, from, to, steps, iters, seed);
  write_output(out_path, sweep_csv(rows));
  if (!svg_path.empty()) write_output(svg_path, sweep_svg(rows));
  return 0;
}

int cmd_gaps(int N, double alpha) {
  const nexp::MapParams p(N, alpha);
  const nexp::IntervalUnion attractor = nexp::attractor_iterate(p, 20000,
                                                                1e-10);
  const auto gaps = nexp::detect_gaps(p);
  std::ostringstream out;
  out << "{\n  \"attractor\": [";
  for (std::size_t t = 0; t < attractor.parts.size(); ++t) {
    out << (t ? ", " : "") << "[" << fmt(attractor.parts[t].lo) << ", "
        << fmt(attractor.parts[t].hi) << "]";
  }
  out << "],\n  \"gaps\": [";
  for (std::size_t t = 0; t < gaps.size(); ++t) {
    out << (t ? ", " : "") << "[" << fmt(gaps[t].lo) << ", "
        << fmt(gaps[t].hi) << "]";
  }
  out << "],\n  \"min_abs_derivative\": " << fmt(nexp::derivative_bound(p))
      << "\n}\n";
  std::fputs(out.str().c_str(), stdout);
  return 0;
}

std::string domain_text(const nexp::NatExtDomain& dom) {
  std::string out;
  for (const nexp::PlanarPoint& v : dom.vertices) {
    out += fmt(v.x);
    out += ' ';
    out += fmt(v.y);
    out += '\n';
  }
  return out;
}

// Outline polygon with dashed verticals at the digit-strip boundaries
// N/(alpha+1+j) for j = d .. d+i-1.
std::string domain_svg(const nexp::NatExtDomain& dom) {
  const double kW = 800.0, kH = 600.0, kL = 70.0, kR = 20.0, kT = 20.0,
               kB = 50.0;
  const double x_lo = dom.alpha, x_hi = dom.alpha + 1.0;
  const double y_lo = dom.heights.A, y_hi = dom.heights.F;
  const auto px = [&](double x) {
    return kL + (x - x_lo) / (x_hi - x_lo) * (kW - kL - kR);
  };
  const auto py = [&](double y) {
    return kH - kB - (y - y_lo) / (y_hi - y_lo) * (kH - kT - kB);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
      << "\">\n";
  out << "<rect width=\"" << kW << "\" height=\"" << kH
      << "\" fill=\"white\"/>\n";
  out << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" "
         "points=\"";
  for (int v = 0; v < 12; ++v) {
    if (v > 0) out << ' ';
    out << fmt6(px(dom.vertices[v].x)) << ',' << fmt6(py(dom.vertices[v].y));
  }
  out << "\"/>\n";
  for (long long j = dom.pair.d; j < dom.pair.d + dom.pair.i; ++j) {
    const double cut = dom.pair.N / (dom.alpha + 1.0 + j);
    if (cut <= x_lo || cut >= x_hi) continue;
    out << "<line x1=\"" << fmt6(px(cut)) << "\" y1=\"" << py(y_hi)
        << "\" x2=\"" << fmt6(px(cut)) << "\" y2=\"" << py(y_lo)
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  out << "<text x=\"" << px(x_lo) << "\" y=\"" << kH - kB + 20
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(x_lo)
      << "</text>\n";
  out << "<text x=\"" << px(x_hi) << "\" y=\"" << kH - kB + 20
      << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(x_hi)
      << "</text>\n";
  out << "<text x=\"" << kL - 8 << "\" y=\"" << py(y_lo) + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(y_lo)
      << "</text>\n";
  out << "<text x=\"" << kL - 8 << "\" y=\"" << py(y_hi) + 4
      << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(y_hi)
      << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

int cmd_domain(int N, int d, long long i, double alpha,
               const std::string& out_path, bool svg) {
  const nexp::NatExtDomain dom =
      nexp::build_domain(nexp::MatchingPair(N, d, i), alpha);
  write_output(out_path, svg ? domain_svg(dom) : domain_text(dom));
  return 0;
}

struct CheckList {
  bool all_ok = true;

  void report(const std::string& name, double value, double tol) {
    const bool ok = value < tol;
    all_ok = all_ok && ok;
    std::printf("%s %s = %s (tol %s)\n", ok ? "ok" : "FAIL", name.c_str(),
                fmt(value).c_str(), fmt(tol).c_str());
  }
  void report_count(const std::string& name, long long bad, long long total,
                    long long limit) {
    const bool ok = bad <= limit;
    all_ok = all_ok && ok;
    std::printf("%s %s = %lld/%lld (limit %lld)\n", ok ? "ok" : "FAIL",
                name.c_str(), bad, total, limit);
  }
};

int cmd_verify(int N, int d, long long i, const std::string& suite,
               uint64_t seed) {
  const nexp::MatchingPair pr(N, d, i);
  const nexp::PlateauHeights h = nexp::plateau_heights(pr);
  const double w = h.B - h.A;
  CheckList checks;

  if (suite == "matching") {
    for (double q : {0.25, 0.5, 0.75}) {
      const double a = h.A + q * w;
      checks.report("matching defect at alpha=" + fmt(a),
                    nexp::verify_matching(pr, a), 1e-10);
    }
    nexp::Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const double a = rng.uniform(h.A + 1e-9, h.B - 1e-9);
      worst = std::max(worst, nexp::verify_matching(pr, a));
    }
    checks.report("matching defect max over 100 samples", worst, 1e-8);
  } else if (suite == "endpoints") {
    const nexp::EndpointIdentityResiduals r = nexp::endpoint_identities(pr);
    checks.report("endpoint identity at A from the left", r.at_a_left, 1e-12);
    checks.report("endpoint identity at A from the right", r.at_a_right,
                  1e-12);
    checks.report("endpoint identity at B from the left", r.at_b_left, 1e-12);
    checks.report("endpoint identity at B from the right", r.at_b_right,
                  1e-12);
  } else if (suite == "lamination") {
    int index = 0;
    for (double q : {0.25, 0.5, 0.75}) {
      const double a = h.A + q * w;
      const nexp::NatExtDomain dom = nexp::build_domain(pr, a);
      const nexp::LaminationReport rep = nexp::check_lamination(
          dom, 1000000, nexp::derive_stream_seed(seed, index++));
      checks.report_count("lamination violations at alpha=" + fmt(a),
                          rep.violations, rep.samples, 0);
      checks.report_count("lamination boundary exclusions at alpha=" + fmt(a),
                          rep.boundary_excluded, rep.samples,
                          rep.samples / 1000);
    }
  } else if (suite == "invariance") {
    nexp::Rng rng(seed);
    for (double q : {0.25, 0.5, 0.75}) {
      const double a = h.A + q * w;
      const nexp::PiecewiseLogDensity f = nexp::density_1d(pr, a);
      checks.report("normalization error at alpha=" + fmt(a),
                    std::abs(nexp::density_normalization(f) - 1.0), 1e-8);
      double worst = 0.0;
      for (int t = 0; t < 1000; ++t) {
        const double x = rng.uniform(a + 1e-9, a + 1.0 - 1e-9);
        worst = std::max(worst, nexp::transfer_residual(pr, a, f, x));
      }
      checks.report("max transfer residual at alpha=" + fmt(a), worst, 1e-9);
    }
  } else if (suite == "quilting") {
    const auto slices = nexp::plateau_slices(pr);
    std::size_t widest = 0;
    for (std::size_t s = 1; s < slices.size(); ++s) {
      if (slices[s].hi - slices[s].lo >
          slices[widest].hi - slices[widest].lo) {
        widest = s;
      }
    }
    const nexp::PlateauSlice& s = slices[widest];
    const double sw = s.hi - s.lo;
    const double q1 = s.lo + 0.25 * sw;
    const double q2 = s.lo + 0.50 * sw;
    const double q3 = s.lo + 0.75 * sw;
    checks.report("quilting residual on the lower quartile pair",
                  nexp::verify_quilting(pr, q1, q2), 1e-9);
    checks.report("quilting residual on the upper quartile pair",
                  nexp::verify_quilting(pr, q2, q3), 1e-9);
    double worst = 0.0;
    for (long long k = pr.d; k < pr.d + pr.i; ++k) {
      worst = std::max(
          worst, std::abs(pr.N / (k + h.F) - pr.N / (k + 1.0 + h.B)));
    }
    checks.report("added and deleted patch height identity max", worst,
                  1e-12);
  } else {
    throw std::invalid_argument(
        "verify: unknown suite '" + suite +
        "' (expected matching, endpoints, lamination, invariance or "
        "quilting)");
  }
  return checks.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Continued fraction expansions with N in the numerator: matching "
      "plateaux, natural extensions, invariant measures, entropy and "
      "attractor gaps"};
  app.require_subcommand(1);

  int N = 0;
  int d = 0;
  long long i = 0;
  double alpha = 0.0;
  double from = 0.0;
  double to = 0.0;
  long long steps = 0;
  long long iters = 1000000;
  std::string suite;
  std::string out_path;
  std::string svg_path;
  bool json_flag = false;
  bool svg_flag = false;
  bool alpha_given = false;
  uint64_t seed = 0;

  CLI::App* c_enum = app.add_subcommand("enumerate", "List matching pairs");
  c_enum->add_option("--N", N, "numerator")->required();
  c_enum->add_flag("--json", json_flag, "emit JSON (the default format)");

  CLI::App* c_plateau =
      app.add_subcommand("plateau", "Report plateau heights and entropy");
  c_plateau->add_option("--N", N, "numerator")->required();
  c_plateau->add_option("--d", d, "right-endpoint digit")->required();
  c_plateau->add_option("--i", i, "digit spread")->required();

  CLI::App* c_classify =
      app.add_subcommand("classify", "Locate alpha relative to a plateau");
  c_classify->add_option("--N", N, "numerator")->required();
  c_classify->add_option("--d", d, "right-endpoint digit")->required();
  c_classify->add_option("--i", i, "digit spread")->required();
  c_classify->add_option("--alpha", alpha, "parameter")->required();

  CLI::App* c_verify = app.add_subcommand("verify", "Run a check suite");
  c_verify->add_option("--N", N, "numerator")->required();
  c_verify->add_option("--d", d, "right-endpoint digit")->required();
  c_verify->add_option("--i", i, "digit spread")->required();
  c_verify->add_option("--suite", suite,
                       "matching, endpoints, lamination, invariance or "
                       "quilting")
      ->required();
  c_verify->add_option("--seed", seed, "sampling seed");

  CLI::App* c_entropy =
      app.add_subcommand("entropy", "Closed-form and simulated entropy");
  c_entropy->add_option("--N", N, "numerator")->required();
  c_entropy->add_option("--d", d, "right-endpoint digit")->required();
  c_entropy->add_option("--i", i, "digit spread")->required();
  c_entropy->add_option("--alpha", alpha, "simulate at this parameter");
  c_entropy->add_option("--iters", iters, "simulation length");

  CLI::App* c_sweep =
      app.add_subcommand("sweep", "Simulated entropy over a parameter grid");
  c_sweep->add_option("--N", N, "numerator")->required();
  c_sweep->add_option("--from", from, "first alpha")->required();
  c_sweep->add_option("--to", to, "last alpha")->required();
  c_sweep->add_option("--steps", steps, "grid size")->required();
  c_sweep->add_option("--iters", iters, "iterations per grid point")
      ->required();
  c_sweep->add_option("--out", out_path, "CSV path (stdout when omitted)");
  c_sweep->add_option("--svg", svg_path, "also write a polyline plot here");
  c_sweep->add_option("--seed", seed, "base seed");

  CLI::App* c_gaps =
      app.add_subcommand("gaps", "Attractor and gap detection");
  c_gaps->add_option("--N", N, "numerator")->required();
  c_gaps->add_option("--alpha", alpha, "parameter")->required();

  CLI::App* c_domain =
      app.add_subcommand("domain", "Planar natural extension outline");
  c_domain->add_option("--N", N, "numerator")->required();
  c_domain->add_option("--d", d, "right-endpoint digit")->required();
  c_domain->add_option("--i", i, "digit spread")->required();
  c_domain->add_option("--alpha", alpha, "parameter")->required();
  c_domain->add_option("--out", out_path, "path (stdout when omitted)");
  c_domain->add_flag("--svg", svg_flag, "emit an SVG outline");

  try {
    seed = seed_from_environment();
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }

  try {
    if (c_enum->parsed()) return cmd_enumerate(N);
    if (c_plateau->parsed()) return cmd_plateau(N, d, i);
    if (c_classify->parsed()) return cmd_classify(N, d, i, alpha);
    if (c_verify->parsed()) return cmd_verify(N, d, i, suite, seed);
    if (c_entropy->parsed()) {
      alpha_given = c_entropy->count("--alpha") > 0;
      return cmd_entropy(N, d, i,
                         alpha_given ? std::optional<double>(alpha)
                                     : std::nullopt,
                         iters, seed);
    }
    if (c_sweep->parsed())
      return cmd_sweep(N, from, to, steps, iters, seed, out_path, svg_path);
    if (c_gaps->parsed()) return cmd_gaps(N, alpha);
    if (c_domain->parsed())
      return cmd_domain(N, d, i, alpha, out_path, svg_flag);
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const nexp::ConvergenceError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::logic_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
