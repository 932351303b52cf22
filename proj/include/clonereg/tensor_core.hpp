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

#ifndef CLONEREG_TENSOR_CORE_HPP
#define CLONEREG_TENSOR_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace clonereg {

using Complex = std::complex<double>;

/// Dense complex square matrix, row-major. Tensor factors are ordered
/// most-significant first, so index (k1, ..., kn) maps to
/// k1 d^{n-1} + ... + kn.
using SquareMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;

/// Largest supported total dimension d^n.
inline constexpr int kMaxTotalDim = 512;

/// Tolerance used to accept a matrix as Hermitian before diagonalizing it.
inline constexpr double kHermitianTol = 1e-10;

/// d^n with the dimension guard applied.
inline int tensor_dim(int d, int n) {
  if (d < 1 || n < 1) {
    throw std::invalid_argument("tensor_dim: local dimension and factor count must be positive");
  }
  long long total = 1;
  for (int k = 0; k < n; ++k) {
    total *= d;
    if (total > kMaxTotalDim) {
      throw std::invalid_argument("tensor_dim: d^n exceeds " + std::to_string(kMaxTotalDim));
    }
  }
  return static_cast<int>(total);
}

/// C^d tensored n times.
struct TensorSpace {
  int local_dim;
  int n_factors;

  int dim() const { return tensor_dim(local_dim, n_factors); }
};

/// A permutation of {1..n}, stored by its images in one-based form:
/// images()[k-1] == pi(k). Composition follows function composition,
/// (pi * sigma)(k) = pi(sigma(k)).
class Permutation {
 public:
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int img : images_) {
      if (img < 1 || img > static_cast<int>(images_.size()) || seen[img - 1]) {
        throw std::invalid_argument("Permutation: images are not a bijection on {1..n}");
      }
      seen[img - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    return Permutation(std::move(images));
  }

  /// Builds a permutation of {1..n} from disjoint cycles, e.g. {{1, 2, 3}}
  /// for the cycle 1 -> 2 -> 3 -> 1.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> images(n);
    std::iota(images.begin(), images.end(), 1);
    std::vector<bool> used(n, false);
    for (const auto& cycle : cycles) {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        int from = cycle[k];
        int to = cycle[(k + 1) % cycle.size()];
        if (from < 1 || from > n || to < 1 || to > n || used[from - 1]) {
          throw std::invalid_argument("Permutation::from_cycles: invalid or overlapping cycle");
        }
        used[from - 1] = true;
        images[from - 1] = to;
      }
    }
    return Permutation(std::move(images));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int k) const { return images_.at(k - 1); }
  std::span<const int> images() const { return images_; }

  Permutation inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t k = 0; k < images_.size(); ++k) inv[images_[k] - 1] = static_cast<int>(k) + 1;
    return Permutation(std::move(inv));
  }

  int cycle_count() const {
    std::vector<bool> seen(images_.size(), false);
    int cycles = 0;
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start]) continue;
      ++cycles;
      for (std::size_t k = start; !seen[k]; k = images_[k] - 1) seen[k] = true;
    }
    return cycles;
  }

  /// Cycle notation with fixed points omitted, "id" for the identity.
  std::string cycle_string() const {
    std::ostringstream out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
      if (seen[start] || images_[start] == static_cast<int>(start) + 1) continue;
      out << '(';
      bool first = true;
      for (std::size_t k = start; !seen[k]; k = images_[k] - 1) {
        seen[k] = true;
        if (!first) out << ' ';
        out << k + 1;
        first = false;
      }
      out << ')';
    }
    std::string s = out.str();
    return s.empty() ? "id" : s;
  }

  friend Permutation operator*(const Permutation& pi, const Permutation& sigma) {
    if (pi.size() != sigma.size()) throw std::invalid_argument("Permutation: size mismatch in composition");
    std::vector<int> images(pi.size());
    for (int k = 1; k <= pi.size(); ++k) images[k - 1] = pi(sigma(k));
    return Permutation(std::move(images));
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// The six elements of S_3 in cycle notation.
namespace s3 {
inline Permutation identity() { return Permutation::identity(3); }
inline Permutation swap12() { return Permutation::from_cycles(3, {{1, 2}}); }
inline Permutation swap13() { return Permutation::from_cycles(3, {{1, 3}}); }
inline Permutation swap23() { return Permutation::from_cycles(3, {{2, 3}}); }
inline Permutation cycle123() { return Permutation::from_cycles(3, {{1, 2, 3}}); }
inline Permutation cycle321() { return Permutation::from_cycles(3, {{3, 2, 1}}); }

inline std::vector<Permutation> all() {
  return {identity(), swap12(), swap13(), swap23(), cycle123(), cycle321()};
}
}  // namespace s3

namespace detail {

inline std::vector<int> digits(int index, int d, int n) {
  std::vector<int> out(n);
  for (int k = n - 1; k >= 0; --k) {
    out[k] = index % d;
    index /= d;
  }
  return out;
}

inline int undigits(std::span<const int> digits, int d) {
  int index = 0;
  for (int x : digits) index = index * d + x;
  return index;
}

}  // namespace detail

/// V(pi) on (C^d)^{(x)n}: V(pi)(v_1 (x) ... (x) v_n) = v_{pi^-1(1)} (x) ... (x) v_{pi^-1(n)}.
inline SquareMatrix permutation_operator(const Permutation& perm, int d, int n) {
  if (perm.size() != n) {
    throw std::invalid_argument("permutation_operator: permutation acts on " + std::to_string(perm.size()) +
                                " elements, expected " + std::to_string(n));
  }
  if (d < 2) throw std::invalid_argument("permutation_operator: d must be at least 2");
  const int dim = tensor_dim(d, n);
  const Permutation inv = perm.inverse();
  SquareMatrix out = SquareMatrix::Zero(dim, dim);
  std::vector<int> dst(n);
  for (int col = 0; col < dim; ++col) {
    const std::vector<int> src = detail::digits(col, d, n);
    for (int j = 0; j < n; ++j) dst[j] = src[inv(j + 1) - 1];
    out(detail::undigits(dst, d), col) = 1.0;
  }
  return out;
}

/// Transposes the first tensor factor: (|i><j| (x) B) -> (|j><i| (x) B).
inline SquareMatrix partial_transpose_first(const SquareMatrix& m, int d, int n) {
  const int dim = tensor_dim(d, n);
  if (m.rows() != dim || m.cols() != dim) {
    throw std::invalid_argument("partial_transpose_first: matrix dimension is not d^n");
  }
  const int rest = dim / d;
  SquareMatrix out(dim, dim);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      out.block(j * rest, i * rest, rest, rest) = m.block(i * rest, j * rest, rest, rest);
    }
  }
  return out;
}

/// V^Gamma(pi): the permutation operator with its first factor transposed.
inline SquareMatrix pt_permutation_operator(const Permutation& perm, int d) {
  return partial_transpose_first(permutation_operator(perm, d, perm.size()), d, perm.size());
}

/// Traces out every factor not listed in `keep` (zero-based factor indices).
/// The kept factors stay in their original order.
inline SquareMatrix partial_trace(const SquareMatrix& m, std::span<const int> dims, std::span<const int> keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  long long total = 1;
  for (int x : dims) {
    if (x < 1) throw std::invalid_argument("partial_trace: non-positive factor dimension");
    total *= x;
  }
  if (m.rows() != total || m.cols() != total) {
    throw std::invalid_argument("partial_trace: product of dims does not match matrix dimension");
  }
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n || kept[k]) throw std::invalid_argument("partial_trace: invalid keep index");
    kept[k] = true;
  }

  std::vector<int> kept_dims, traced_dims;
  for (int k = 0; k < n; ++k) (kept[k] ? kept_dims : traced_dims).push_back(dims[k]);
  auto product = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 1, std::multiplies<>()); };
  const int out_dim = product(kept_dims);
  const int traced_dim = product(traced_dims);

  // full index from (kept multi-index, traced multi-index)
  auto compose = [&](int kept_index, int traced_index) {
    std::vector<int> kd(kept_dims.size()), td(traced_dims.size());
    for (int k = static_cast<int>(kept_dims.size()) - 1; k >= 0; --k) {
      kd[k] = kept_index % kept_dims[k];
      kept_index /= kept_dims[k];
    }
    for (int k = static_cast<int>(traced_dims.size()) - 1; k >= 0; --k) {
      td[k] = traced_index % traced_dims[k];
      traced_index /= traced_dims[k];
    }
    int index = 0, a = 0, b = 0;
    for (int k = 0; k < n; ++k) index = index * dims[k] + (kept[k] ? kd[a++] : td[b++]);
    return index;
  };

  std::vector<int> lookup(static_cast<std::size_t>(out_dim) * traced_dim);
  for (int r = 0; r < out_dim; ++r) {
    for (int t = 0; t < traced_dim; ++t) lookup[static_cast<std::size_t>(r) * traced_dim + t] = compose(r, t);
  }

  SquareMatrix out = SquareMatrix::Zero(out_dim, out_dim);
  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < out_dim; ++c) {
      Complex acc = 0;
      for (int t = 0; t < traced_dim; ++t) {
        acc += m(lookup[static_cast<std::size_t>(r) * traced_dim + t], lookup[static_cast<std::size_t>(c) * traced_dim + t]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

inline SquareMatrix partial_trace(const SquareMatrix& m, std::initializer_list<int> dims, std::initializer_list<int> keep) {
  return partial_trace(m, std::span<const int>(dims.begin(), dims.size()), std::span<const int>(keep.begin(), keep.size()));
}

/// max |M - M^dagger| entrywise.
inline double hermiticity_error(const SquareMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const SquareMatrix& m, double tol = kHermitianTol) { return hermiticity_error(m) <= tol; }

/// Ascending real eigenvalues of a Hermitian matrix.
inline std::vector<double> hermitian_spectrum(const SquareMatrix& m, double tol = kHermitianTol) {
  if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_spectrum: matrix is not square");
  const double herr = hermiticity_error(m);
  if (herr > tol) {
    throw std::invalid_argument("hermitian_spectrum: matrix is not Hermitian (error " + std::to_string(herr) + ")");
  }
  Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("hermitian_spectrum: eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

/// Smallest eigenvalue of a Hermitian matrix.
inline double min_eigenvalue(const SquareMatrix& m, double tol = kHermitianTol) {
  const auto spectrum = hermitian_spectrum(m, tol);
  return spectrum.empty() ? 0.0 : spectrum.front();
}

/// Haar-distributed d x d unitary: QR of a complex Ginibre matrix with the
/// phases of R's diagonal pushed into Q.
template <class Rng>
SquareMatrix sample_haar_unitary(int d, Rng& rng) {
  if (d < 1) throw std::invalid_argument("sample_haar_unitary: d must be at least 1");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Eigen::MatrixXcd z(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) z(r, c) = Complex(normal(rng), normal(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (int c = 0; c < d; ++c) {
    const double mag = std::abs(r(c, c));
    const Complex phase = mag > 0 ? r(c, c) / mag : Complex(1.0);
    q.col(c) *= phase;
  }
  return q;
}

/// Seeded RNG for a given (seed, stream) pair; distinct streams are
/// statistically independent.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

inline SquareMatrix haar_random_unitary(int d, std::uint64_t seed) {
  auto rng = make_rng(seed);
  return sample_haar_unitary(d, rng);
}

/// Kronecker product A (x) B.
inline SquareMatrix kron(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

/// Unnormalized maximally entangled projector sum_{ij} |ii><jj| on C^d (x) C^d.
inline SquareMatrix omega_projector(int d) {
  SquareMatrix out = SquareMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out(i * d + i, j * d + j) = 1.0;
  }
  return out;
}

/// Tr[A^dagger B].
inline Complex hs_inner(const SquareMatrix& a, const SquareMatrix& b) { return (a.conjugate().cwiseProduct(b)).sum(); }

}  // namespace clonereg

#endif  // CLONEREG_TENSOR_CORE_HPP
