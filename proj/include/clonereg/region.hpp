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

// Achievable singlet-fraction pairs of symmetrized 1 -> 2 cloners.
//
// In coordinates s = p1 + p2, t = p1 - p2 every achievable pair lies in
//
//     t^2 / a^2 + (s - c_lambda)^2 / b^2 <= lambda^2
//
// for some lambda in [0, d], with a = (d^2-1)^{-1/2}, b = (d^2-1)^{-1} and
// c_lambda = (lambda d - 2) / (d^2 - 1). The optimal cloners sit on the
// lambda = d ellipse, which is also the whole region reachable without the
// identity and (2 3) terms.
//
// Margins are signed, positive inside. `margin` is b (lambda - r_lambda) / sqrt(2),
// where r_lambda is the normalized ellipse radius of the point; it is a lower
// bound on the Euclidean distance in the (p1, p2) plane to the region boundary.

#ifndef CLONEREG_REGION_HPP
#define CLONEREG_REGION_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonereg {

/// Membership tolerance on the distance-like margin.
inline constexpr double kBoundaryTol = 1e-12;

struct SingletPair {
  double p1 = 0.0;
  double p2 = 0.0;
};

struct RegionCoords {
  double s = 0.0;
  double t = 0.0;
  int d = 2;

  double a() const { return 1.0 / std::sqrt(static_cast<double>(d) * d - 1.0); }
  double b() const { return 1.0 / (static_cast<double>(d) * d - 1.0); }
  double c(double lambda) const { return (lambda * d - 2.0) / (static_cast<double>(d) * d - 1.0); }
};

struct RegionWitness {
  bool inside = false;
  std::optional<double> witness_lambda;
  double margin = 0.0;
  /// Determinant-scale margin, equal to (1-p1)(1-p2)/d^2 - ((p1+p2-1)/2)^2
  /// when lambda = d.
  double algebraic_margin = 0.0;
  /// Feasible lambda window (empty when lambda_lo > lambda_hi).
  double lambda_lo = 1.0;
  double lambda_hi = 0.0;
};

namespace detail {
inline void require_dim(int d, const char* where) {
  if (d < 2) throw std::invalid_argument(std::string(where) + ": d must be at least 2");
}
inline double dsq1(int d) { return static_cast<double>(d) * d - 1.0; }
}  // namespace detail

inline RegionCoords to_region_coords(SingletPair p, int d) {
  detail::require_dim(d, "to_region_coords");
  return {p.p1 + p.p2, p.p1 - p.p2, d};
}

inline SingletPair from_region_coords(const RegionCoords& rc) { return {(rc.s + rc.t) / 2.0, (rc.s - rc.t) / 2.0}; }

/// s = (d (f1 + f2) - 2) / (d - 1), t = d (f1 - f2) / (d - 1).
inline RegionCoords coords_from_fidelities(double f1, double f2, int d) {
  detail::require_dim(d, "coords_from_fidelities");
  return {(d * (f1 + f2) - 2.0) / (d - 1.0), d * (f1 - f2) / (d - 1.0), d};
}

inline double symmetric_pmax(int d) {
  detail::require_dim(d, "symmetric_pmax");
  return (2.0 + d) / (2.0 * (1.0 + d));
}

inline double min_singlet_fraction(int d) {
  detail::require_dim(d, "min_singlet_fraction");
  return -1.0 / detail::dsq1(d);
}

/// r_lambda = sqrt(t^2/a^2 + (s - c_lambda)^2/b^2).
inline double ellipse_radius(const RegionCoords& rc, double lambda) {
  const double k = detail::dsq1(rc.d);
  const double shifted = k * rc.s + 2.0 - lambda * rc.d;
  return std::sqrt(k * rc.t * rc.t + shifted * shifted);
}

/// Membership in the single ellipse indexed by lambda.
inline RegionWitness in_ellipse(SingletPair p, int d, double lambda) {
  detail::require_dim(d, "in_ellipse");
  const RegionCoords rc = to_region_coords(p, d);
  const double k = detail::dsq1(d);
  const double slack = lambda - ellipse_radius(rc, lambda);
  const double shifted = k * rc.s + 2.0 - lambda * d;
  RegionWitness w;
  w.margin = rc.b() * slack / std::numbers::sqrt2;
  w.algebraic_margin = (lambda * lambda - shifted * shifted - k * rc.t * rc.t) / (4.0 * d * d * k);
  w.inside = lambda >= -kBoundaryTol && lambda <= d + kBoundaryTol && w.margin >= -kBoundaryTol;
  if (w.inside) {
    w.witness_lambda = lambda;
    w.lambda_lo = w.lambda_hi = lambda;
  }
  return w;
}

/// Membership in the restricted (optimal-cloner) ellipse.
inline RegionWitness in_restricted_region(SingletPair p, int d) {
  detail::require_dim(d, "in_restricted_region");
  RegionWitness w = in_ellipse(p, d, d);
  w.algebraic_margin = (1.0 - p.p1) * (1.0 - p.p2) / (static_cast<double>(d) * d) -
                       std::pow((p.p1 + p.p2 - 1.0) / 2.0, 2);
  // The ellipse already lies in the box; clipping only matters under roundoff.
  const double lo = min_singlet_fraction(d);
  const double box = std::min({p.p1 - lo, 1.0 - p.p1, p.p2 - lo, 1.0 - p.p2});
  if (box < 0.0) {
    w.margin = std::min(w.margin, box);
    w.algebraic_margin = std::min(w.algebraic_margin, box);
  }
  w.inside = w.margin >= -kBoundaryTol;
  if (!w.inside) {
    w.witness_lambda.reset();
    w.lambda_lo = 1.0;
    w.lambda_hi = 0.0;
  }
  return w;
}

/// Membership in the union of ellipses over lambda in [0, d].
///
/// The slack lambda - r_lambda is concave in lambda and peaks at
/// lambda* = (B + |t|) / d with B = (d^2 - 1) s + 2. The feasible window is
/// where (d^2-1) lambda^2 - 2 B d lambda + B^2 + (d^2-1) t^2 <= 0, clipped to
/// [0, d]; the witness is its midpoint.
inline RegionWitness in_general_region(SingletPair p, int d) {
  detail::require_dim(d, "in_general_region");
  const RegionCoords rc = to_region_coords(p, d);
  const double k = detail::dsq1(d);
  const double big_b = k * rc.s + 2.0;

  const double lambda_star = std::clamp((big_b + std::abs(rc.t)) / d, 0.0, static_cast<double>(d));
  RegionWitness w;
  w.margin = rc.b() * (lambda_star - ellipse_radius(rc, lambda_star)) / std::numbers::sqrt2;

  const double lambda_q = std::clamp(big_b * d / k, 0.0, static_cast<double>(d));
  const double shifted_q = big_b - lambda_q * d;
  w.algebraic_margin = (lambda_q * lambda_q - shifted_q * shifted_q - k * rc.t * rc.t) / (4.0 * d * d * k);

  w.inside = w.margin >= -kBoundaryTol;
  const double disc = big_b * big_b - k * k * rc.t * rc.t;
  if (disc >= 0.0) {
    const double root = std::sqrt(disc);
    w.lambda_lo = std::max(0.0, (big_b * d - root) / k);
    w.lambda_hi = std::min(static_cast<double>(d), (big_b * d + root) / k);
  }
  if (w.inside) {
    w.witness_lambda = w.lambda_lo <= w.lambda_hi ? 0.5 * (w.lambda_lo + w.lambda_hi) : lambda_star;
  }
  return w;
}

struct BoundaryPoint {
  double lambda = 0.0;
  double theta = 0.0;
  SingletPair p;
};

/// n points on the lambda-ellipse: s = c_lambda + b lambda cos(theta),
/// t = a lambda sin(theta), theta = 2 pi k / n.
inline std::vector<BoundaryPoint> boundary_points(int d, double lambda, int n) {
  detail::require_dim(d, "boundary_points");
  if (!(lambda > 0.0) || lambda > d) throw std::invalid_argument("boundary_points: lambda must lie in (0, d]");
  if (n < 3) throw std::invalid_argument("boundary_points: need at least 3 points");
  const RegionCoords frame{0.0, 0.0, d};
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * k / n;
    const RegionCoords rc{frame.c(lambda) + frame.b() * lambda * std::cos(theta), frame.a() * lambda * std::sin(theta), d};
    out.push_back({lambda, theta, from_region_coords(rc)});
  }
  return out;
}

enum class RegionMode { restricted, general };

inline RegionWitness region_membership(SingletPair p, int d, RegionMode mode) {
  return mode == RegionMode::restricted ? in_restricted_region(p, d) : in_general_region(p, d);
}

inline const char* to_string(RegionMode mode) { return mode == RegionMode::restricted ? "restricted" : "general"; }

/// Square plotting window [lo, hi]^2 framing the region.
struct PlotWindow {
  double lo = 0.0;
  double hi = 1.0;
};

inline PlotWindow plot_window(int d) { return {min_singlet_fraction(d) - 0.05, 1.05}; }

/// Row-major grid of verdicts at cell centers; row index runs over p2,
/// column index over p1.
struct Bitmap {
  int n = 0;
  PlotWindow window;
  std::vector<char> cells;

  double cell_size() const { return (window.hi - window.lo) / n; }
  double center(int k) const { return window.lo + (k + 0.5) * cell_size(); }
  SingletPair point(int row, int col) const { return {center(col), center(row)}; }
  bool at(int row, int col) const { return cells[static_cast<std::size_t>(row) * n + col] != 0; }
};

inline Bitmap analytic_bitmap(int d, RegionMode mode, int n, PlotWindow window) {
  if (n < 1) throw std::invalid_argument("analytic_bitmap: grid must have at least one cell");
  Bitmap bm{n, window, std::vector<char>(static_cast<std::size_t>(n) * n, 0)};
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      bm.cells[static_cast<std::size_t>(row) * n + col] = region_membership(bm.point(row, col), d, mode).inside;
    }
  }
  return bm;
}

}  // namespace clonereg

#endif  // CLONEREG_REGION_HPP
