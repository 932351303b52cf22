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

// Symmetrized 1 -> 2 cloners in the six-coefficient parametrization
//
//   C = alpha V^G(1 2) + beta V^G(1 3) + gamma V^G(1 2 3) + conj(gamma) V^G(3 2 1)
//       + eps1 I + eps2 V^G(2 3),
//
// where V^G is the permutation operator with the input factor transposed.
//
// With u_i = sum_k |k k i> and v_i = sum_k |k i k>, each span{u_i, v_i} is
// invariant. In the orthonormal basis (u_i + v_i)/sqrt(2(d+1)),
// (u_i - v_i)/sqrt(2(d-1)) the block is
//
//   1/(2d) [ (d^2-1)s - (d-1)lambda + 2        sqrt(d^2-1)(t - 2 i d Im gamma) ]
//          [ sqrt(d^2-1)(t + 2 i d Im gamma)   -((d^2-1)s - (d+1)lambda + 2)  ]
//
// for trace-normalized coefficients, with lambda = -d((d^2-2) eps1 + d eps2 - 1).
// The orthogonal complement splits into the (2 3)-symmetric part, where C acts
// as eps1 + eps2 with multiplicity d^2(d+1)/2 - d, and the antisymmetric part,
// eps1 - eps2 with multiplicity d^2(d-1)/2 - d.

#ifndef CLONEREG_CLONING_HPP
#define CLONEREG_CLONING_HPP

#include "clonereg/channels.hpp"
#include "clonereg/region.hpp"
#include "clonereg/tensor_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonereg {

struct CoefficientVector {
  double alpha = 0.0;  // V^G((1 2))
  double beta = 0.0;   // V^G((1 3))
  Complex gamma = 0.0; // V^G((1 2 3)); conj(gamma) on V^G((3 2 1))
  double eps1 = 0.0;   // V^G(id)
  double eps2 = 0.0;   // V^G((2 3))
  int d = 2;

  /// d(alpha + beta) + 2 Re(gamma) + d^2 eps1 + d eps2; equals 1 for a
  /// trace-preserving cloner.
  double trace_normalization() const {
    return d * (alpha + beta) + 2.0 * gamma.real() + static_cast<double>(d) * d * eps1 + d * eps2;
  }

  bool is_normalized(double tol = 1e-12) const { return std::abs(trace_normalization() - 1.0) <= tol; }

  double lambda() const { return -d * ((static_cast<double>(d) * d - 2.0) * eps1 + eps2 * d - 1.0); }

  CoefficientVector scaled(double factor) const {
    return {alpha * factor, beta * factor, gamma * factor, eps1 * factor, eps2 * factor, d};
  }

  /// Coefficients in s3::all() order: id, (1 2), (1 3), (2 3), (1 2 3), (3 2 1).
  Eigen::Matrix<Complex, 6, 1> basis_coefficients() const {
    Eigen::Matrix<Complex, 6, 1> out;
    out << eps1, alpha, beta, eps2, gamma, std::conj(gamma);
    return out;
  }
};

/// Thrown when a synthesis target lies outside the achievable region.
class InfeasibleTarget : public std::domain_error {
 public:
  InfeasibleTarget(const std::string& what, double margin) : std::domain_error(what), margin_(margin) {}
  double margin() const { return margin_; }

 private:
  double margin_;
};

inline ChoiMatrix build_choi(const CoefficientVector& c, const CommutantBasis& basis) {
  if (basis.d() != c.d) throw std::invalid_argument("build_choi: basis dimension does not match coefficients");
  return {c.d, c.d * c.d, basis.combine(c.basis_coefficients())};
}

inline ChoiMatrix build_choi(const CoefficientVector& c) {
  if (c.d < 2) throw std::invalid_argument("build_choi: d must be at least 2");
  return build_choi(c, CommutantBasis(c.d));
}

/// p1 = alpha d + 2 Re(gamma), p2 = beta d + 2 Re(gamma).
inline SingletPair marginal_params(const CoefficientVector& c) {
  return {c.alpha * c.d + 2.0 * c.gamma.real(), c.beta * c.d + 2.0 * c.gamma.real()};
}

struct BlockPair {
  int d = 2;
  /// Hermitian block on span{u_i, v_i} in the orthonormal basis built from
  /// u_i + v_i and u_i - v_i; repeated d times.
  Eigen::Matrix2cd two_by_two;
  double sym_value = 0.0;      // eps1 + eps2
  double antisym_value = 0.0;  // eps1 - eps2

  int block_multiplicity() const { return d; }
  int sym_multiplicity() const { return d * d * (d + 1) / 2 - d; }
  int antisym_multiplicity() const { return d * d * (d - 1) / 2 - d; }

  /// Ascending eigenvalues of the 2x2 block, in closed form.
  std::array<double, 2> block_eigenvalues() const {
    const double a = two_by_two(0, 0).real();
    const double e = two_by_two(1, 1).real();
    const double off = std::abs(two_by_two(0, 1));
    const double mean = 0.5 * (a + e);
    const double radius = std::hypot(0.5 * (a - e), off);
    return {mean - radius, mean + radius};
  }

  /// Full d^3 spectrum assembled from the blocks, ascending.
  std::vector<double> assembled_spectrum() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(d) * d * d);
    for (double ev : block_eigenvalues()) out.insert(out.end(), block_multiplicity(), ev);
    out.insert(out.end(), sym_multiplicity(), sym_value);
    out.insert(out.end(), antisym_multiplicity(), antisym_value);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Smallest eigenvalue over blocks that actually occur.
  double min_eigenvalue() const {
    double m = block_eigenvalues()[0];
    if (sym_multiplicity() > 0) m = std::min(m, sym_value);
    if (antisym_multiplicity() > 0) m = std::min(m, antisym_value);
    return m;
  }
};

/// Block decomposition read directly off the coefficients; no trace
/// normalization is assumed.
inline BlockPair block_decomposition(const CoefficientVector& c) {
  const double d = c.d;
  const Complex g = c.gamma;
  const Complex gb = std::conj(g);
  // Action on (u_i, v_i): C u = r00 u + r10 v, C v = r01 u + r11 v.
  Eigen::Matrix2cd action;
  action << c.alpha * d + g + c.eps1, c.alpha + g * d + c.eps2,
            c.beta + gb * d + c.eps2, c.beta * d + gb + c.eps1;
  Eigen::Matrix2cd gram;
  gram << d, 1.0, 1.0, d;
  Eigen::Matrix2cd basis;
  const double plus = 1.0 / std::sqrt(2.0 * (d + 1.0));
  const double minus = 1.0 / std::sqrt(2.0 * (d - 1.0));
  basis << plus, minus, plus, -minus;

  BlockPair out;
  out.d = c.d;
  out.two_by_two = basis.adjoint() * gram * action * basis;
  out.two_by_two = 0.5 * (out.two_by_two + out.two_by_two.adjoint()).eval();
  out.sym_value = c.eps1 + c.eps2;
  out.antisym_value = c.eps1 - c.eps2;
  return out;
}

/// The same block written through (s, t, lambda); valid for trace-normalized
/// coefficients only.
inline Eigen::Matrix2cd ellipse_form_block(const RegionCoords& rc, double lambda, double im_gamma) {
  const double d = rc.d;
  const double k = d * d - 1.0;
  const double root = std::sqrt(k);
  Eigen::Matrix2cd out;
  out << k * rc.s - (d - 1.0) * lambda + 2.0, root * Complex(rc.t, -2.0 * d * im_gamma),
         root * Complex(rc.t, 2.0 * d * im_gamma), -(k * rc.s - (d + 1.0) * lambda + 2.0);
  return out / (2.0 * d);
}

struct FastValidity {
  bool valid = false;
  double min_eig = 0.0;
  double tp_error = 0.0;
  double tol = kValidityTol;
};

/// Validity from the block structure alone.
inline FastValidity is_valid_fast(const CoefficientVector& c, double tol = kValidityTol) {
  const BlockPair blocks = block_decomposition(c);
  FastValidity out;
  out.tol = tol;
  out.min_eig = blocks.min_eigenvalue();
  out.tp_error = std::abs(c.trace_normalization() - 1.0);
  out.valid = out.min_eig >= -tol && out.tp_error <= tol;
  return out;
}

/// Four-operator cloner for a target inside the restricted ellipse:
/// alpha = (1 - p2)/d, beta = (1 - p1)/d, gamma = (p1 + p2 - 1)/2.
inline CoefficientVector synthesize_restricted(double p1, double p2, int d) {
  const RegionWitness w = in_restricted_region({p1, p2}, d);
  if (!w.inside) {
    throw InfeasibleTarget("synthesize_restricted: target outside the restricted region (margin " +
                               std::to_string(w.margin) + ")",
                           w.margin);
  }
  CoefficientVector c;
  c.d = d;
  c.alpha = (1.0 - p2) / d;
  c.beta = (1.0 - p1) / d;
  c.gamma = (p1 + p2 - 1.0) / 2.0;
  return c;
}

/// Six-operator cloner reaching (p1, p2) on the lambda-ellipse, with the
/// gauge eps2 = 0, eps1 = (1 - lambda/d) / (d^2 - 2).
inline CoefficientVector synthesize_general(double p1, double p2, double lambda, int d) {
  if (d < 2) throw std::invalid_argument("synthesize_general: d must be at least 2");
  if (!(lambda >= -kBoundaryTol && lambda <= d + kBoundaryTol)) {
    throw InfeasibleTarget("synthesize_general: lambda outside [0, d]", -std::max(-lambda, lambda - d));
  }
  lambda = std::clamp(lambda, 0.0, static_cast<double>(d));
  const RegionWitness w = in_ellipse({p1, p2}, d, lambda);
  if (!w.inside) {
    throw InfeasibleTarget("synthesize_general: target outside the lambda = " + std::to_string(lambda) +
                               " ellipse (margin " + std::to_string(w.margin) + ")",
                           w.margin);
  }
  const double dd = static_cast<double>(d) * d;
  CoefficientVector c;
  c.d = d;
  c.eps2 = 0.0;
  c.eps1 = (1.0 - lambda / d) / (dd - 2.0);
  const double re_gamma = (p1 + p2 - 1.0 + dd * c.eps1) / 2.0;
  c.gamma = re_gamma;
  c.alpha = (p1 - 2.0 * re_gamma) / d;
  c.beta = (p2 - 2.0 * re_gamma) / d;
  return c;
}

/// Synthesis at the witness lambda of the general region.
inline CoefficientVector synthesize(double p1, double p2, int d) {
  const RegionWitness w = in_general_region({p1, p2}, d);
  if (!w.inside) {
    throw InfeasibleTarget("synthesize: target outside the achievable region (margin " + std::to_string(w.margin) + ")",
                           w.margin);
  }
  return synthesize_general(p1, p2, *w.witness_lambda, d);
}

}  // namespace clonereg

#endif  // CLONEREG_CLONING_HPP
