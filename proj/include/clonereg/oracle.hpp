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

// Brute-force feasibility by full diagonalization.
//
// Every verdict here comes from build_choi, the complete d^3 spectrum and the
// partial trace over the outputs. Block formulas and region inequalities are
// never consulted, so this module can audit both.

#ifndef CLONEREG_ORACLE_HPP
#define CLONEREG_ORACLE_HPP

#include "clonereg/channels.hpp"
#include "clonereg/cloning.hpp"
#include "clonereg/parallel.hpp"
#include "clonereg/region.hpp"
#include "clonereg/tensor_core.hpp"

#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

namespace clonereg {

struct ScanConfig {
  int d = 2;
  int lambda_steps = 200;
  int gamma_im_steps = 1;
  /// Im(gamma) grid spans [-gamma_im_max, gamma_im_max].
  double gamma_im_max = 0.25;
  double tol = 1e-9;
  int point_grid = 128;

  void validate() const {
    if (d < 2) throw std::invalid_argument("ScanConfig: d must be at least 2");
    if (lambda_steps < 1 || gamma_im_steps < 1 || point_grid < 1) {
      throw std::invalid_argument("ScanConfig: step counts must be at least 1");
    }
    if (!(tol > 0.0 && tol <= 1e-6)) throw std::invalid_argument("ScanConfig: tol must lie in (0, 1e-6]");
  }

  std::vector<double> lambda_grid() const {
    std::vector<double> out(lambda_steps + 1);
    for (int k = 0; k <= lambda_steps; ++k) out[k] = static_cast<double>(d) * k / lambda_steps;
    return out;
  }

  std::vector<double> gamma_im_grid() const {
    if (gamma_im_steps == 1) return {0.0};
    std::vector<double> out(gamma_im_steps);
    for (int k = 0; k < gamma_im_steps; ++k) {
      out[k] = -gamma_im_max + 2.0 * gamma_im_max * k / (gamma_im_steps - 1);
    }
    return out;
  }
};

struct ScanResult {
  bool feasible = false;
  double best_min_eig = -std::numeric_limits<double>::infinity();
  double best_tp_error = 0.0;
  CoefficientVector best_params;
  std::optional<double> best_lambda;
};

namespace detail {

/// Solves the affine slice: given (p1, p2), eps1, eps2 and Im(gamma), fixes
/// Re(gamma) by trace preservation and alpha, beta by the marginals.
inline CoefficientVector slice_coefficients(SingletPair p, int d, double eps1, double eps2, double im_gamma) {
  const double dd = static_cast<double>(d) * d;
  CoefficientVector c;
  c.d = d;
  c.eps1 = eps1;
  c.eps2 = eps2;
  const double re_gamma = (p.p1 + p.p2 - 1.0 + dd * eps1 + d * eps2) / 2.0;
  c.gamma = Complex(re_gamma, im_gamma);
  c.alpha = (p.p1 - 2.0 * re_gamma) / d;
  c.beta = (p.p2 - 2.0 * re_gamma) / d;
  return c;
}

inline double full_tp_error(const ChoiMatrix& choi) {
  return (trace_output(choi) - SquareMatrix::Identity(choi.d_in, choi.d_in)).cwiseAbs().maxCoeff();
}

}  // namespace detail

inline ScanResult feasibility_scan(SingletPair p, const ScanConfig& cfg, RegionMode mode, const CommutantBasis& basis) {
  cfg.validate();
  if (basis.d() != cfg.d) throw std::invalid_argument("feasibility_scan: basis dimension mismatch");
  const int d = cfg.d;
  const double dd = static_cast<double>(d) * d;

  std::vector<std::optional<double>> lambdas;
  if (mode == RegionMode::restricted) {
    lambdas.push_back(std::nullopt);
  } else {
    for (double l : cfg.lambda_grid()) lambdas.emplace_back(l);
  }

  ScanResult best;
  for (const auto& lambda : lambdas) {
    // eps2 = 0 gauge; lambda = d - d (d^2 - 2) eps1.
    const double eps1 = lambda ? (1.0 - *lambda / d) / (dd - 2.0) : 0.0;
    for (double im : cfg.gamma_im_grid()) {
      const CoefficientVector c = detail::slice_coefficients(p, d, eps1, 0.0, im);
      const ChoiMatrix choi = build_choi(c, basis);
      const double min_eig = hermitian_spectrum(choi.matrix).front();
      const double tp = detail::full_tp_error(choi);
      const bool ok = min_eig >= -cfg.tol && tp <= cfg.tol;
      if (min_eig > best.best_min_eig) {
        best.best_min_eig = min_eig;
        best.best_tp_error = tp;
        best.best_params = c;
        best.best_lambda = lambda;
      }
      best.feasible = best.feasible || ok;
    }
  }
  return best;
}

inline ScanResult feasibility_scan(SingletPair p, const ScanConfig& cfg, RegionMode mode = RegionMode::general) {
  return feasibility_scan(p, cfg, mode, CommutantBasis(cfg.d));
}

/// Oracle verdicts on the cfg.point_grid^2 cell centers of `window`.
inline Bitmap region_bitmap(const ScanConfig& cfg, RegionMode mode, PlotWindow window) {
  cfg.validate();
  if (cfg.point_grid < 16) throw std::invalid_argument("region_bitmap: point_grid must be at least 16");
  const int n = cfg.point_grid;
  Bitmap bm{n, window, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
  const CommutantBasis basis(cfg.d);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    for (int col = 0; col < n; ++col) {
      bm.cells[row * n + col] = feasibility_scan(bm.point(static_cast<int>(row), col), cfg, mode, basis).feasible;
    }
  });
  return bm;
}

inline Bitmap region_bitmap(const ScanConfig& cfg, RegionMode mode) {
  return region_bitmap(cfg, mode, plot_window(cfg.d));
}

/// CSV with header "p1,p2,feasible", one line per cell center.
inline void write_bitmap_csv(std::ostream& out, const Bitmap& bm, const char* column = "feasible") {
  char line[96];
  out << "p1,p2," << column << '\n';
  for (int row = 0; row < bm.n; ++row) {
    for (int col = 0; col < bm.n; ++col) {
      const SingletPair p = bm.point(row, col);
      std::snprintf(line, sizeof line, "%.17g,%.17g,%d\n", p.p1, p.p2, bm.at(row, col) ? 1 : 0);
      out << line;
    }
  }
}

struct GammaProbeCase {
  SingletPair target;
  double real_min_eig = 0.0;
  double complex_min_eig = 0.0;
  double best_im_gamma = 0.0;
};

struct GammaProbeReport {
  int d = 2;
  RegionMode mode = RegionMode::general;
  int samples = 0;
  /// Targets where some Im(gamma) != 0 beats Im(gamma) = 0 by more than tol.
  std::vector<GammaProbeCase> improvements;
  double max_gain = 0.0;
  /// Targets infeasible with real gamma but feasible with some Im(gamma).
  int flipped = 0;
};

/// Compares the best minimum eigenvalue with Im(gamma) = 0 against the best
/// over an Im(gamma) grid, at random targets within a relative radial offset of a
/// lambda-ellipse.
inline GammaProbeReport imaginary_gamma_probe(int d, int samples, std::uint64_t seed, RegionMode mode = RegionMode::general,
                                              ScanConfig cfg = {}, double offset = 1e-3) {
  if (samples < 100) throw std::invalid_argument("imaginary_gamma_probe: need at least 100 samples");
  cfg.d = d;
  if (cfg.gamma_im_steps < 3) cfg.gamma_im_steps = 21;
  cfg.validate();
  ScanConfig real_cfg = cfg;
  real_cfg.gamma_im_steps = 1;

  auto rng = make_rng(seed, 0x7072);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<SingletPair> targets(samples);
  const RegionCoords frame{0.0, 0.0, d};
  for (auto& target : targets) {
    const double lambda = mode == RegionMode::restricted ? d : d * (0.05 + 0.95 * unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    // radial scale 1 +- offset about the lambda-ellipse
    const double scale = 1.0 + offset * (2.0 * unit(rng) - 1.0);
    target = from_region_coords({frame.c(lambda) + frame.b() * lambda * scale * std::cos(theta),
                                 frame.a() * lambda * scale * std::sin(theta), d});
  }

  GammaProbeReport report;
  report.d = d;
  report.mode = mode;
  report.samples = samples;
  std::vector<GammaProbeCase> cases(samples);
  const CommutantBasis basis(d);
  parallel_for(static_cast<std::size_t>(samples), [&](std::size_t k) {
    const ScanResult real = feasibility_scan(targets[k], real_cfg, mode, basis);
    const ScanResult full = feasibility_scan(targets[k], cfg, mode, basis);
    cases[k] = {targets[k], real.best_min_eig, full.best_min_eig, full.best_params.gamma.imag()};
  });
  for (const auto& c : cases) {
    const double gain = c.complex_min_eig - c.real_min_eig;
    report.max_gain = std::max(report.max_gain, gain);
    if (gain > cfg.tol) report.improvements.push_back(c);
    if (c.real_min_eig < -cfg.tol && c.complex_min_eig >= -cfg.tol) ++report.flipped;
  }
  return report;
}

}  // namespace clonereg

#endif  // CLONEREG_ORACLE_HPP
