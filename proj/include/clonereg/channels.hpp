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

// Choi-matrix calculus for channels M_{d_in} -> M_{d_out}.
//
// The Choi matrix of T is C_T = sum_{ij} |i><j| (x) T(|i><j|), with the input
// factor first. T is recovered as T(X) = Tr_in[C_T (X^T (x) I)]. The
// maximally entangled vector is kept unnormalized, sum_i |ii>, throughout.

#ifndef CLONEREG_CHANNELS_HPP
#define CLONEREG_CHANNELS_HPP

#include "clonereg/parallel.hpp"
#include "clonereg/tensor_core.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace clonereg {

/// Minimum-eigenvalue and trace-preservation tolerance for validity checks.
inline constexpr double kValidityTol = 1e-9;

struct ChoiMatrix {
  int d_in = 0;
  int d_out = 0;
  SquareMatrix matrix;

  ChoiMatrix() = default;
  ChoiMatrix(int in, int out, SquareMatrix m) : d_in(in), d_out(out), matrix(std::move(m)) {
    if (d_in < 1 || d_out < 1 || matrix.rows() != static_cast<Eigen::Index>(d_in) * d_out ||
        matrix.cols() != matrix.rows()) {
      throw std::invalid_argument("ChoiMatrix: matrix dimension must equal d_in * d_out");
    }
  }

  /// Number of d_in-dimensional output factors, or 0 if d_out is not a power of d_in.
  int output_copies() const {
    if (d_in < 2) return 0;
    int copies = 0;
    long long dim = 1;
    while (dim < d_out) {
      dim *= d_in;
      ++copies;
    }
    return dim == d_out ? copies : 0;
  }
};

/// T(rho) = p rho + (1 - p) I / d, together with how far the channel it was
/// read from is from that form.
struct DepolarizingForm {
  double p = 0.0;
  int d = 0;
  double residual = 0.0;

  bool is_depolarizing(double tol = 1e-8) const { return residual <= tol; }
};

struct ValidityReport {
  bool is_psd = false;
  double min_eig = 0.0;
  double tp_error = 0.0;
  double tol = kValidityTol;

  bool tp_ok() const { return tp_error <= tol; }
  bool valid() const { return is_psd && tp_ok(); }
};

/// f = p + (1 - p) / d.
inline double fidelity_from_p(double p, int d) {
  if (d < 2) throw std::invalid_argument("fidelity_from_p: d must be at least 2");
  return p + (1.0 - p) / d;
}

/// p = (d f - 1) / (d - 1).
inline double p_from_fidelity(double f, int d) {
  if (d < 2) throw std::invalid_argument("p_from_fidelity: d must be at least 2");
  return (d * f - 1.0) / (d - 1.0);
}

inline ChoiMatrix choi_from_map(const std::function<SquareMatrix(const SquareMatrix&)>& map, int d_in, int d_out) {
  SquareMatrix c = SquareMatrix::Zero(static_cast<Eigen::Index>(d_in) * d_out, static_cast<Eigen::Index>(d_in) * d_out);
  for (int i = 0; i < d_in; ++i) {
    for (int j = 0; j < d_in; ++j) {
      SquareMatrix eij = SquareMatrix::Zero(d_in, d_in);
      eij(i, j) = 1.0;
      const SquareMatrix image = map(eij);
      if (image.rows() != d_out || image.cols() != d_out) {
        throw std::invalid_argument("choi_from_map: map output has wrong dimension");
      }
      c.block(i * d_out, j * d_out, d_out, d_out) = image;
    }
  }
  return {d_in, d_out, std::move(c)};
}

inline ChoiMatrix identity_choi(int d) { return {d, d, omega_projector(d)}; }

inline ChoiMatrix fully_depolarizing_choi(int d_in, int d_out) {
  const int dim = d_in * d_out;
  return {d_in, d_out, SquareMatrix::Identity(dim, dim) / static_cast<double>(d_out)};
}

inline ChoiMatrix depolarizing_choi(double p, int d) {
  return {d, d, p * omega_projector(d) + (1.0 - p) * SquareMatrix::Identity(d * d, d * d) / static_cast<double>(d)};
}

inline SquareMatrix apply_channel(const ChoiMatrix& c, const SquareMatrix& x) {
  if (x.rows() != c.d_in || x.cols() != c.d_in) {
    throw std::invalid_argument("apply_channel: input has dimension " + std::to_string(x.rows()) + ", expected " +
                                std::to_string(c.d_in));
  }
  SquareMatrix out = SquareMatrix::Zero(c.d_out, c.d_out);
  for (int i = 0; i < c.d_in; ++i) {
    for (int j = 0; j < c.d_in; ++j) {
      if (x(i, j) == Complex(0.0)) continue;
      out += x(i, j) * c.matrix.block(i * c.d_out, j * c.d_out, c.d_out, c.d_out);
    }
  }
  return out;
}

/// Tr_out[C].
inline SquareMatrix trace_output(const ChoiMatrix& c) {
  const std::array<int, 2> dims{c.d_in, c.d_out};
  const std::array<int, 1> keep{0};
  return partial_trace(c.matrix, dims, keep);
}

/// Choi's conditions: C >= 0 and Tr_out[C] = I.
inline ValidityReport choi_validity(const ChoiMatrix& c, double tol = kValidityTol) {
  const double herr = hermiticity_error(c.matrix);
  if (herr > std::max(tol, kHermitianTol)) {
    throw std::invalid_argument("choi_validity: Choi matrix is not Hermitian (error " + std::to_string(herr) + ")");
  }
  ValidityReport report;
  report.tol = tol;
  report.min_eig = min_eigenvalue(c.matrix, std::max(tol, kHermitianTol));
  report.is_psd = report.min_eig >= -tol;
  const SquareMatrix reduced = trace_output(c);
  report.tp_error = (reduced - SquareMatrix::Identity(c.d_in, c.d_in)).cwiseAbs().maxCoeff();
  return report;
}

/// Choi matrix of T_i for a 1 -> 2 channel, i.e. the other output traced out.
inline ChoiMatrix marginal_choi(const ChoiMatrix& c, int which) {
  if (c.d_out != c.d_in * c.d_in) {
    throw std::invalid_argument("marginal_choi: output is not two copies of the input space");
  }
  if (which != 1 && which != 2) throw std::invalid_argument("marginal_choi: which must be 1 or 2");
  const std::array<int, 3> dims{c.d_in, c.d_in, c.d_in};
  const std::array<int, 2> keep{0, which};
  return {c.d_in, c.d_in, partial_trace(c.matrix, dims, keep)};
}

/// Reads p off the overlap with sum_{ij}|ii><jj|, which is exact on the
/// depolarizing family: Tr[C Omega] = p d^2 + (1 - p).
inline DepolarizingForm extract_depolarizing(const ChoiMatrix& c) {
  if (c.d_in != c.d_out) throw std::invalid_argument("extract_depolarizing: channel must map M_d to M_d");
  const int d = c.d_in;
  double overlap = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) overlap += c.matrix(i * d + i, j * d + j).real();
  }
  DepolarizingForm form;
  form.d = d;
  form.p = (overlap - 1.0) / (static_cast<double>(d) * d - 1.0);
  form.residual = (c.matrix - depolarizing_choi(form.p, d).matrix).cwiseAbs().maxCoeff();
  return form;
}

/// The six V^Gamma(pi), pi in S_3, for one local dimension. Index order
/// follows s3::all(): id, (1 2), (1 3), (2 3), (1 2 3), (3 2 1).
class CommutantBasis {
 public:
  explicit CommutantBasis(int d) : d_(d), perms_(s3::all()) {
    tensor_dim(d, 3);
    for (const auto& p : perms_) ops_.push_back(pt_permutation_operator(p, d));
    for (int a = 0; a < 6; ++a) {
      for (int b = 0; b < 6; ++b) {
        gram_(a, b) = std::pow(static_cast<double>(d), (perms_[a].inverse() * perms_[b]).cycle_count());
      }
    }
    // For d = 2 the antisymmetrizer vanishes and the six operators span only
    // five dimensions; the decomposition then yields minimum-norm coefficients.
    gram_solver_.setThreshold(1e-12);
    gram_solver_.compute(gram_);
  }

  int d() const { return d_; }
  const SquareMatrix& op(int k) const { return ops_[k]; }
  const Permutation& perm(int k) const { return perms_[k]; }

  /// Tr[V(pi)^dagger V(sigma)] = d^{#cycles(pi^-1 sigma)}; partial
  /// transposition leaves it unchanged.
  const Eigen::Matrix<double, 6, 6>& gram() const { return gram_; }

  /// 6 for d >= 3, 5 for d = 2.
  int rank() const { return static_cast<int>(gram_solver_.rank()); }

  /// Coefficients c_pi of the Hilbert-Schmidt projection sum_pi c_pi V^Gamma(pi).
  Eigen::Matrix<Complex, 6, 1> project_coefficients(const SquareMatrix& m) const {
    Eigen::Matrix<Complex, 6, 1> rhs;
    for (int k = 0; k < 6; ++k) rhs(k) = hs_inner(ops_[k], m);
    const Eigen::Matrix<double, 6, 1> re = gram_solver_.solve(rhs.real());
    const Eigen::Matrix<double, 6, 1> im = gram_solver_.solve(rhs.imag());
    Eigen::Matrix<Complex, 6, 1> out;
    for (int k = 0; k < 6; ++k) out(k) = Complex(re(k), im(k));
    return out;
  }

  SquareMatrix combine(const Eigen::Matrix<Complex, 6, 1>& coeffs) const {
    SquareMatrix out = SquareMatrix::Zero(ops_[0].rows(), ops_[0].cols());
    for (int k = 0; k < 6; ++k) out += coeffs(k) * ops_[k];
    return out;
  }

 private:
  int d_;
  std::vector<Permutation> perms_;
  std::vector<SquareMatrix> ops_;
  Eigen::Matrix<double, 6, 6> gram_;
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 6, 6>> gram_solver_;
};

/// Haar twirl of a 1 -> 2 Choi matrix, computed as the orthogonal projection
/// onto span{V^Gamma(pi) : pi in S_3}.
inline ChoiMatrix twirl_channel_exact(const ChoiMatrix& c) {
  if (c.d_out != c.d_in * c.d_in) throw std::invalid_argument("twirl_channel_exact: output must be two input copies");
  const CommutantBasis basis(c.d_in);
  return {c.d_in, c.d_out, basis.combine(basis.project_coefficients(c.matrix))};
}

/// max |C - twirl(C)| entrywise.
inline double commutant_distance(const ChoiMatrix& c) {
  return (c.matrix - twirl_channel_exact(c).matrix).cwiseAbs().maxCoeff();
}

/// Samples are split into this many fixed chunks, each with its own RNG
/// stream, so results are independent of the thread count.
inline constexpr int kTwirlChunks = 16;

/// Monte-Carlo twirl: average of (conj(U) (x) U^{(x)N}) C (...)^dagger over
/// Haar-random U.
inline ChoiMatrix twirl_channel_mc(const ChoiMatrix& c, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("twirl_channel_mc: n_samples must be at least 1");
  const int copies = c.output_copies();
  if (copies < 1) throw std::invalid_argument("twirl_channel_mc: output must be a tensor power of the input space");
  const int d = c.d_in;
  const Eigen::Index dim = c.matrix.rows();

  std::vector<SquareMatrix> partial(kTwirlChunks, SquareMatrix::Zero(dim, dim));
  parallel_for(kTwirlChunks, [&](std::size_t chunk) {
    const int begin = static_cast<int>(static_cast<long long>(n_samples) * chunk / kTwirlChunks);
    const int end = static_cast<int>(static_cast<long long>(n_samples) * (chunk + 1) / kTwirlChunks);
    auto rng = make_rng(seed, chunk);
    SquareMatrix& acc = partial[chunk];
    for (int s = begin; s < end; ++s) {
      const SquareMatrix u = sample_haar_unitary(d, rng);
      SquareMatrix k = u.conjugate();
      for (int copy = 0; copy < copies; ++copy) k = kron(k, u);
      acc.noalias() += k * c.matrix * k.adjoint();
    }
  });
  SquareMatrix sum = SquareMatrix::Zero(dim, dim);
  for (const auto& p : partial) sum += p;
  return {c.d_in, c.d_out, sum / static_cast<double>(n_samples)};
}

/// A random valid Choi matrix: W = G G^dagger for a Ginibre G, then
/// normalized to Tr_out = I via (R^{-1/2} (x) I) W (R^{-1/2} (x) I).
inline ChoiMatrix random_valid_choi(int d_in, int d_out, std::uint64_t seed) {
  auto rng = make_rng(seed, 0x636f);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int dim = d_in * d_out;
  SquareMatrix g(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int col = 0; col < dim; ++col) g(r, col) = Complex(normal(rng), normal(rng));
  }
  ChoiMatrix w{d_in, d_out, g * g.adjoint()};
  const SquareMatrix reduced = trace_output(w);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(0.5 * (reduced + reduced.adjoint())));
  const SquareMatrix inv_sqrt = solver.operatorInverseSqrt();
  const SquareMatrix k = kron(inv_sqrt, SquareMatrix::Identity(d_out, d_out));
  SquareMatrix normalized = k * w.matrix * k.adjoint();
  normalized = 0.5 * (normalized + normalized.adjoint());
  return {d_in, d_out, std::move(normalized)};
}

}  // namespace clonereg

#endif  // CLONEREG_CHANNELS_HPP
