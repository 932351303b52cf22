// Copyright 2026 The clonereg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Subcommand implementations for the clonereg command-line tool. Each command
// takes parsed options plus output/error streams and returns the exit code:
// 0 ok/inside, 1 usage, 2 I/O, 3 infeasible/outside/invalid.

#ifndef CLONEREG_TOOLS_COMMANDS_HPP
#define CLONEREG_TOOLS_COMMANDS_HPP

#include "clonereg/clonereg.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace clonereg::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kOutside = 3 };

inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;
inline constexpr int kSvgSize = 600;

/// 12 significant digits, for human-readable output.
inline std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Full precision, for files.
inline std::string full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline bool check_dim(int d, std::ostream& err) {
  if (d < kMinDim || d > kMaxDim) {
    err << "error: --d must lie in [" << kMinDim << ", " << kMaxDim << "], got " << d << '\n';
    return false;
  }
  return true;
}

inline std::optional<RegionMode> parse_mode(const std::string& s) {
  if (s == "restricted") return RegionMode::restricted;
  if (s == "general") return RegionMode::general;
  return std::nullopt;
}

/// Writes `content` to `path`, or to `out` when path is "-".
inline bool emit(const std::string& path, const std::string& content, std::ostream& out, std::ostream& err) {
  if (path == "-") {
    out << content;
    return true;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path << " for writing\n";
    return false;
  }
  file << content;
  file.flush();
  if (!file) {
    err << "error: failed writing " << path << '\n';
    return false;
  }
  return true;
}

inline std::optional<std::string> slurp(const std::string& path, std::ostream& err) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << path << " for reading\n";
    return std::nullopt;
  }
  return std::string(std::istreambuf_iterator<char>(file), {});
}

// ---------------------------------------------------------------------------
// region

struct RegionOptions {
  int d = 2;
  std::string mode = "general";
  /// Either a count n (lambda_k = d k / n, k = 1..n) or a comma list.
  std::string lambdas = "4";
  int resolution = 256;
  int grid = 64;
  std::string format = "csv";
  std::string out = "-";
  std::string scan_out;
};

inline std::optional<std::vector<double>> parse_lambdas(const std::string& text, int d) {
  std::vector<double> out;
  if (text.find_first_of(",.") == std::string::npos) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(text, &used);
      if (used != text.size() || n < 1) return std::nullopt;
      for (int k = 1; k <= n; ++k) out.push_back(static_cast<double>(d) * k / n);
      return out;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) return std::nullopt;
      out.push_back(v);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  if (out.empty()) return std::nullopt;
  return out;
}

struct Curve {
  double lambda;
  std::vector<BoundaryPoint> points;
};

inline std::string region_csv(const std::vector<Curve>& curves) {
  std::string s = "lambda,theta,p1,p2\n";
  for (const auto& c : curves) {
    for (const auto& bp : c.points) {
      s += full(bp.lambda) + ',' + full(bp.theta) + ',' + full(bp.p.p1) + ',' + full(bp.p.p2) + '\n';
    }
  }
  return s;
}

inline std::string region_json(int d, RegionMode mode, const std::vector<Curve>& curves) {
  const PlotWindow w = plot_window(d);
  std::string s = "{\"d\": " + std::to_string(d) + ", \"mode\": \"" + to_string(mode) + "\", \"window\": [" + full(w.lo) +
                  ", " + full(w.hi) + "], \"curves\": [";
  for (std::size_t k = 0; k < curves.size(); ++k) {
    if (k) s += ", ";
    s += "{\"lambda\": " + full(curves[k].lambda) + ", \"points\": [";
    for (std::size_t i = 0; i < curves[k].points.size(); ++i) {
      if (i) s += ", ";
      s += '[' + full(curves[k].points[i].p.p1) + ", " + full(curves[k].points[i].p.p2) + ']';
    }
    s += "]}";
  }
  s += "]}\n";
  return s;
}

inline std::string svg_coord(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Fixed 600x600 viewport over the square [min_singlet_fraction(d) - 0.05, 1.05]^2.
inline std::string region_svg(int d, RegionMode mode, const std::vector<Curve>& curves) {
  const PlotWindow w = plot_window(d);
  const double span = w.hi - w.lo;
  auto x_of = [&](double p1) { return (p1 - w.lo) / span * kSvgSize; };
  auto y_of = [&](double p2) { return kSvgSize - (p2 - w.lo) / span * kSvgSize; };

  std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  s += "<title>d = " + std::to_string(d) + ", " + to_string(mode) + "</title>\n";
  s += "<rect class=\"axes\" x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\" stroke=\"black\"/>\n";
  s += "<line class=\"axis\" x1=\"" + svg_coord(x_of(0.0)) + "\" y1=\"0\" x2=\"" + svg_coord(x_of(0.0)) +
       "\" y2=\"600\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  s += "<line class=\"axis\" x1=\"0\" y1=\"" + svg_coord(y_of(0.0)) + "\" x2=\"600\" y2=\"" + svg_coord(y_of(0.0)) +
       "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  for (const auto& c : curves) {
    const double shade = c.lambda / d;
    s += "<path class=\"boundary\" data-lambda=\"" + full(c.lambda) + "\" fill=\"steelblue\" fill-opacity=\"" +
         svg_coord(0.15 + 0.25 * shade) + "\" stroke=\"navy\" d=\"";
    for (std::size_t i = 0; i < c.points.size(); ++i) {
      s += (i == 0 ? "M " : " L ") + svg_coord(x_of(c.points[i].p.p1)) + ' ' + svg_coord(y_of(c.points[i].p.p2));
    }
    s += " Z\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

inline std::string scan_csv(int d, RegionMode mode, int grid) {
  const Bitmap bm = analytic_bitmap(d, mode, grid, plot_window(d));
  std::ostringstream out;
  write_bitmap_csv(out, bm, "inside");
  return out.str();
}

inline int run_region(const RegionOptions& opt, std::ostream& out, std::ostream& err) {
  if (!check_dim(opt.d, err)) return kUsage;
  const auto mode = parse_mode(opt.mode);
  if (!mode) {
    err << "error: --mode must be restricted or general\n";
    return kUsage;
  }
  if (opt.resolution < 3 || opt.grid < 1) {
    err << "error: --resolution must be at least 3 and --grid at least 1\n";
    return kUsage;
  }
  std::vector<double> lambdas{static_cast<double>(opt.d)};
  if (*mode == RegionMode::general) {
    const auto parsed = parse_lambdas(opt.lambdas, opt.d);
    if (!parsed) {
      err << "error: --lambdas must be a positive count or a comma-separated list\n";
      return kUsage;
    }
    lambdas = *parsed;
  }
  std::vector<Curve> curves;
  for (double l : lambdas) {
    if (!(l > 0.0) || l > opt.d) {
      err << "error: lambda " << l << " outside (0, d]\n";
      return kUsage;
    }
    curves.push_back({l, boundary_points(opt.d, l, opt.resolution)});
  }

  std::string body;
  if (opt.format == "csv") {
    body = region_csv(curves);
  } else if (opt.format == "json") {
    body = region_json(opt.d, *mode, curves);
  } else if (opt.format == "svg") {
    body = region_svg(opt.d, *mode, curves);
  } else {
    err << "error: --format must be csv, json or svg\n";
    return kUsage;
  }
  if (!emit(opt.out, body, out, err)) return kIo;

  if (opt.format == "csv") {
    std::string scan_path = opt.scan_out;
    if (scan_path.empty() && opt.out != "-") {
      std::filesystem::path p(opt.out);
      scan_path = (p.parent_path() / (p.stem().string() + "_scan.csv")).string();
    }
    if (!scan_path.empty() && !emit(scan_path, scan_csv(opt.d, *mode, opt.grid), out, err)) return kIo;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check

struct CheckOptions {
  int d = 2;
  std::optional<double> p1, p2, f1, f2;
  std::string mode = "general";
};

inline int run_check(const CheckOptions& opt, std::ostream& out, std::ostream& err) {
  if (!check_dim(opt.d, err)) return kUsage;
  const auto mode = parse_mode(opt.mode);
  if (!mode) {
    err << "error: --mode must be restricted or general\n";
    return kUsage;
  }
  const bool has_p = opt.p1 || opt.p2;
  const bool has_f = opt.f1 || opt.f2;
  if (has_p == has_f || (has_p && !(opt.p1 && opt.p2)) || (has_f && !(opt.f1 && opt.f2))) {
    err << "error: give exactly one of the pairs --p1/--p2 or --f1/--f2\n";
    return kUsage;
  }
  SingletPair p;
  if (has_p) {
    p = {*opt.p1, *opt.p2};
  } else {
    p = from_region_coords(coords_from_fidelities(*opt.f1, *opt.f2, opt.d));
  }
  const RegionCoords rc = to_region_coords(p, opt.d);
  const RegionWitness w = region_membership(p, opt.d, *mode);

  out << "mode: " << to_string(*mode) << "\n";
  out << "d: " << opt.d << "\n";
  out << "p1, p2: " << num(p.p1) << ", " << num(p.p2) << "\n";
  out << "f1, f2: " << num(fidelity_from_p(p.p1, opt.d)) << ", " << num(fidelity_from_p(p.p2, opt.d)) << "\n";
  out << "s, t: " << num(rc.s) << ", " << num(rc.t) << "\n";
  out << "verdict: " << (w.inside ? "inside" : "outside") << "\n";
  out << "margin: " << num(w.margin) << "\n";
  out << "algebraic margin: " << num(w.algebraic_margin) << "\n";
  if (w.witness_lambda) {
    out << "witness lambda: " << num(*w.witness_lambda) << "\n";
    out << "lambda window: [" << num(w.lambda_lo) << ", " << num(w.lambda_hi) << "]\n";
  } else {
    out << "witness lambda: none\n";
  }
  return w.inside ? kOk : kOutside;
}

// ---------------------------------------------------------------------------
// synth

struct SynthOptions {
  int d = 2;
  double p1 = 0.0;
  double p2 = 0.0;
  std::optional<double> lambda;
  std::string out = "-";
  /// Targets this close (in the p-plane) outside the region are moved onto it.
  double snap = 1e-4;
};

/// Farthest point of the segment anchor -> target inside the lambda-ellipse
/// (or the general region when lambda is empty), found by bisection.
inline SingletPair pull_inside(SingletPair target, int d, std::optional<double> lambda) {
  const double l = lambda.value_or(static_cast<double>(d));
  const RegionCoords frame{0.0, 0.0, d};
  const SingletPair anchor = from_region_coords({frame.c(l), 0.0, d});
  auto inside = [&](SingletPair q) { return lambda ? in_ellipse(q, d, *lambda).inside : in_general_region(q, d).inside; };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const SingletPair q{anchor.p1 + mid * (target.p1 - anchor.p1), anchor.p2 + mid * (target.p2 - anchor.p2)};
    (inside(q) ? lo : hi) = mid;
  }
  return {anchor.p1 + lo * (target.p1 - anchor.p1), anchor.p2 + lo * (target.p2 - anchor.p2)};
}

inline int run_synth(const SynthOptions& opt, std::ostream& out, std::ostream& err) {
  if (!check_dim(opt.d, err)) return kUsage;
  std::ostream& report = opt.out == "-" ? err : out;
  if (opt.lambda && !(*opt.lambda >= 0.0 && *opt.lambda <= opt.d)) {
    err << "error: --lambda must lie in [0, d]\n";
    return kOutside;
  }

  SingletPair target{opt.p1, opt.p2};
  RegionWitness w = opt.lambda ? in_ellipse(target, opt.d, *opt.lambda) : in_general_region(target, opt.d);
  SingletPair goal = target;
  if (!w.inside) {
    goal = pull_inside(target, opt.d, opt.lambda);
    const double moved = std::hypot(goal.p1 - target.p1, goal.p2 - target.p2);
    if (moved > opt.snap) {
      err << "infeasible: target outside the achievable region, margin " << num(w.margin) << "\n";
      return kOutside;
    }
    report << "note: target moved by " << num(moved) << " onto the region boundary\n";
    w = opt.lambda ? in_ellipse(goal, opt.d, *opt.lambda) : in_general_region(goal, opt.d);
  }

  CoefficientVector c;
  double lambda = 0.0;
  try {
    lambda = opt.lambda.value_or(w.witness_lambda.value_or(static_cast<double>(opt.d)));
    c = synthesize_general(goal.p1, goal.p2, lambda, opt.d);
  } catch (const InfeasibleTarget& e) {
    err << "infeasible: " << e.what() << "\n";
    return kOutside;
  }

  const ChoiMatrix choi = build_choi(c);
  nlohmann::json meta = coefficients_to_json(c);
  meta["lambda"] = lambda;
  meta["target"] = {target.p1, target.p2};
  meta["synthesized"] = {goal.p1, goal.p2};
  if (!emit(opt.out, choi_to_json_string(choi, meta), out, err)) return kIo;

  const SingletPair got = marginal_params(c);
  report << "lambda: " << num(lambda) << "\n";
  report << "alpha, beta: " << num(c.alpha) << ", " << num(c.beta) << "\n";
  report << "gamma: " << num(c.gamma.real()) << " + " << num(c.gamma.imag()) << "i\n";
  report << "eps1, eps2: " << num(c.eps1) << ", " << num(c.eps2) << "\n";
  report << "p1, p2: " << num(got.p1) << ", " << num(got.p2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string in;
  double tol = kValidityTol;
};

inline int run_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
  const auto text = slurp(opt.in, err);
  if (!text) return kIo;
  ChoiFile file;
  try {
    file = parse_choi_json(*text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const ChoiMatrix& choi = file.choi;
  out << "d_in, d_out: " << choi.d_in << ", " << choi.d_out << "\n";
  const double herr = hermiticity_error(choi.matrix);
  out << "hermiticity error: " << num(herr) << "\n";
  const bool hermitian = herr <= std::max(opt.tol, kHermitianTol);
  if (!hermitian) {
    out << "diagnosis: not Hermitian, so not a Choi matrix of a channel\n";
    out << "(remaining lines describe the Hermitian part)\n";
  }
  // The Hermitian part still locates the damage for hand-edited files.
  const ChoiMatrix herm_part(choi.d_in, choi.d_out, 0.5 * (choi.matrix + choi.matrix.adjoint()));
  const ValidityReport v = choi_validity(hermitian ? choi : herm_part, opt.tol);
  out << "min eigenvalue: " << num(v.min_eig) << (v.is_psd ? "" : "  (not positive semidefinite)") << "\n";
  out << "trace-preservation error: " << num(v.tp_error) << (v.tp_ok() ? "" : "  (partial trace is not the identity)")
      << "\n";
  bool ok = hermitian && v.valid();
  if (choi.d_out == choi.d_in * choi.d_in) {
    for (int which : {1, 2}) {
      const DepolarizingForm form = extract_depolarizing(marginal_choi(choi, which));
      out << "marginal " << which << ": p = " << num(form.p) << ", f = " << num(fidelity_from_p(form.p, choi.d_in))
          << ", depolarizing residual = " << num(form.residual) << (form.is_depolarizing() ? "" : "  (not depolarizing)")
          << "\n";
      ok = ok && form.is_depolarizing();
    }
  }
  out << "valid: " << (ok ? "yes" : "no") << "\n";
  return ok ? kOk : kOutside;
}

// ---------------------------------------------------------------------------
// spectra

struct SpectraOptions {
  int d = 2;
};

/// Nonzero eigenvalues grouped as (value, multiplicity), largest first.
inline std::vector<std::pair<double, int>> nonzero_multiplicities(const std::vector<double>& spectrum,
                                                                  double zero_tol = 1e-9, double group_tol = 1e-8) {
  std::vector<std::pair<double, int>> groups;
  for (auto it = spectrum.rbegin(); it != spectrum.rend(); ++it) {
    if (std::abs(*it) <= zero_tol) continue;
    if (!groups.empty() && std::abs(groups.back().first - *it) <= group_tol) {
      ++groups.back().second;
    } else {
      groups.emplace_back(*it, 1);
    }
  }
  return groups;
}

inline std::string format_spectrum(const std::vector<std::pair<double, int>>& groups) {
  std::string s = "{";
  for (std::size_t k = 0; k < groups.size(); ++k) {
    if (k) s += ", ";
    const double v = std::round(groups[k].first * 1e9) / 1e9;
    s += (v < 0 ? "−" + num(-v) : num(v)) + " ×" + std::to_string(groups[k].second);
  }
  return s + "}";
}

inline int run_spectra(const SpectraOptions& opt, std::ostream& out, std::ostream& err) {
  if (!check_dim(opt.d, err)) return kUsage;
  const int d = opt.d;
  const CommutantBasis basis(d);
  // s3::all() order: id, (1 2), (1 3), (2 3), (1 2 3), (3 2 1)
  const auto swaps = hermitian_spectrum(basis.op(1) + basis.op(2));
  const auto cycles = hermitian_spectrum(basis.op(4) + basis.op(5));
  out << "V^Γ(12)+V^Γ(13): " << format_spectrum(nonzero_multiplicities(swaps)) << "\n";
  out << "V^Γ(123)+V^Γ(321): " << format_spectrum(nonzero_multiplicities(cycles)) << "\n";

  const std::map<int, const char*> labels{{1, "12"}, {2, "13"}, {4, "123"}, {5, "321"}};
  for (const auto& [k, label] : labels) {
    const Eigen::MatrixXcd m = basis.op(k);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
    qr.setThreshold(1e-9);
    const int rank = static_cast<int>(qr.rank());
    out << "rank V^Γ(" << label << ") = " << rank << (rank == d ? " (= d)" : " (expected d)") << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// twirl

struct TwirlOptions {
  std::string in;
  int samples = 0;
  std::uint64_t seed = 0;
  std::string out = "-";
};

inline int run_twirl(const TwirlOptions& opt, std::ostream& out, std::ostream& err) {
  if (opt.samples < 0) {
    err << "error: --samples must be non-negative\n";
    return kUsage;
  }
  const auto text = slurp(opt.in, err);
  if (!text) return kIo;
  ChoiFile file;
  try {
    file = parse_choi_json(*text);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (file.choi.d_out != file.choi.d_in * file.choi.d_in) {
    err << "error: twirl needs a 1 -> 2 channel (d_out = d_in^2)\n";
    return kUsage;
  }
  const ChoiMatrix twirled =
      opt.samples > 0 ? twirl_channel_mc(file.choi, opt.samples, opt.seed) : twirl_channel_exact(file.choi);
  const double distance = commutant_distance(twirled);
  nlohmann::json meta = {{"twirl", opt.samples > 0 ? "monte-carlo" : "exact"}, {"commutant_distance", distance}};
  if (opt.samples > 0) {
    meta["samples"] = opt.samples;
    meta["seed"] = opt.seed;
  }
  if (!emit(opt.out, choi_to_json_string(twirled, meta), out, err)) return kIo;
  std::ostream& report = opt.out == "-" ? err : out;
  report << "mode: " << (opt.samples > 0 ? "monte-carlo" : "exact") << "\n";
  report << "commutant distance: " << num(distance) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// random

struct RandomOptions {
  int d = 2;
  std::uint64_t seed = 0;
  std::string out = "-";
};

/// A random valid (generally non-symmetrized) 1 -> 2 Choi matrix.
inline int run_random(const RandomOptions& opt, std::ostream& out, std::ostream& err) {
  if (!check_dim(opt.d, err)) return kUsage;
  if (tensor_dim(opt.d, 3) > 125) {
    err << "error: random Choi matrices are limited to d <= 5\n";
    return kUsage;
  }
  const ChoiMatrix c = random_valid_choi(opt.d, opt.d * opt.d, opt.seed);
  const nlohmann::json meta = {{"source", "random"}, {"seed", opt.seed}};
  return emit(opt.out, choi_to_json_string(c, meta), out, err) ? kOk : kIo;
}

}  // namespace clonereg::cli

#endif  // CLONEREG_TOOLS_COMMANDS_HPP
