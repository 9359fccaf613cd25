// Copyright 2026 The totalcoh developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace totalcoh {

using ComplexMatrix = Eigen::MatrixXcd;

// Validation tolerances. Eigensolver noise on dim <= 64 double-precision
// matrices sits around 1e-14; the windows below absorb it without masking
// genuine invariant violations.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kSpectrumClamp = 1e-12;
inline constexpr double kSupportTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-9;

inline double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix gram = u.adjoint() * u;
  gram -= ComplexMatrix::Identity(u.rows(), u.cols());
  return gram.cwiseAbs().maxCoeff() <= tol;
}

/// An n x n Hermitian, positive semidefinite, unit-trace matrix. All three
/// invariants are checked at construction; instances are immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols()) {
      throw std::invalid_argument("DensityMatrix: matrix must be square and nonempty");
    }
    if (hermiticity_defect(mat_) > kHermitianTol) {
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    }
    std::complex<double> tr = mat_.trace();
    if (std::abs(tr - std::complex<double>(1.0, 0.0)) > kTraceTol) {
      throw std::invalid_argument("DensityMatrix: trace must be 1, got " +
                                  std::to_string(tr.real()));
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(mat_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol) {
      throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    }
  }

  int dim() const { return static_cast<int>(mat_.rows()); }
  const ComplexMatrix& matrix() const { return mat_; }

  static DensityMatrix maximally_mixed(int dim) {
    if (dim < 1) throw std::invalid_argument("maximally_mixed: dim must be >= 1");
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
  }

  static DensityMatrix diagonal(const std::vector<double>& probs) {
    ComplexMatrix m = ComplexMatrix::Zero(probs.size(), probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
    return DensityMatrix(std::move(m));
  }

  /// |psi><psi| for a (not necessarily normalized) nonzero amplitude vector.
  static DensityMatrix pure(const Eigen::VectorXcd& psi) {
    double norm = psi.norm();
    if (norm <= 0.0) throw std::invalid_argument("pure: zero state vector");
    Eigen::VectorXcd v = psi / norm;
    return DensityMatrix(v * v.adjoint());
  }

 private:
  ComplexMatrix mat_;
};

/// Descending list of eigenvalues of a state, clamped to [0, 1].
class Spectrum {
 public:
  explicit Spectrum(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw std::invalid_argument("Spectrum: empty");
    double sum = 0.0;
    for (double& p : probs_) {
      if (p < -kSpectrumClamp || p > 1.0 + kSpectrumClamp) {
        throw std::invalid_argument("Spectrum: entry outside [0, 1] clamp window");
      }
      p = std::clamp(p, 0.0, 1.0);
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("Spectrum: entries must sum to 1, got " +
                                  std::to_string(sum));
    }
    for (std::size_t i = 0; i + 1 < probs_.size(); ++i) {
      if (probs_[i] < probs_[i + 1]) {
        throw std::invalid_argument("Spectrum: entries must be nonincreasing");
      }
    }
  }

  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double sum() const {
    double s = 0.0;
    for (double p : probs_) s += p;
    return s;
  }

 private:
  std::vector<double> probs_;
};

enum class Subsystem { A, B };

/// A density matrix with a declared (dim_a x dim_b) tensor factorization,
/// subsystem A on the left (row-major index i*dim_b + j).
class BipartiteState {
 public:
  BipartiteState(int dim_a, int dim_b, DensityMatrix state)
      : dim_a_(dim_a), dim_b_(dim_b), state_(std::move(state)) {
    if (dim_a_ < 1 || dim_b_ < 1 || state_.dim() != dim_a_ * dim_b_) {
      throw std::invalid_argument("BipartiteState: dim_a * dim_b must equal state dim");
    }
  }

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const DensityMatrix& state() const { return state_; }

 private:
  int dim_a_;
  int dim_b_;
  DensityMatrix state_;
};

/// Eigenvalues of rho, descending, clamped to [0, 1]. The clamp window here
/// is the density-matrix PSD tolerance; Spectrum re-checks its own.
inline Spectrum eigen_spectrum(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  std::vector<double> vals(es.eigenvalues().data(),
                           es.eigenvalues().data() + rho.dim());
  for (double& v : vals) v = std::clamp(v, 0.0, 1.0);
  std::sort(vals.begin(), vals.end(), std::greater<>());
  return Spectrum(std::move(vals));
}

/// -sum p log2 p with the 0 log 0 = 0 convention. Result in bits.
inline double von_neumann_entropy(const Spectrum& spec) {
  double acc = 0.0;
  for (double p : spec.probs()) {
    if (p > 0.0) acc -= p * std::log2(p);
  }
  return acc;
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(eigen_spectrum(rho));
}

/// Quantum relative entropy S(rho || sigma) = Tr{rho log2 rho - rho log2 sigma}
/// in bits. Returns +infinity when the support of rho is not contained in the
/// support of sigma (support judged at eigenvalue tolerance 1e-10).
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  const Spectrum rho_spec = eigen_spectrum(rho);
  double tr_rho_log_rho = 0.0;
  for (double p : rho_spec.probs()) {
    if (p > 0.0) tr_rho_log_rho += p * std::log2(p);
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix());
  double tr_rho_log_sigma = 0.0;
  for (int j = 0; j < sigma.dim(); ++j) {
    double q = std::clamp(es.eigenvalues()[j], 0.0, 1.0);
    Eigen::VectorXcd v = es.eigenvectors().col(j);
    double mass = std::max(0.0, (v.adjoint() * rho.matrix() * v).value().real());
    if (q <= kSupportTol) {
      if (mass > kSupportTol) return std::numeric_limits<double>::infinity();
      continue;  // negligible rho-mass outside sigma's support
    }
    tr_rho_log_sigma += mass * std::log2(q);
  }
  return tr_rho_log_rho - tr_rho_log_sigma;
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval());
}

inline DensityMatrix partial_trace(const BipartiteState& s, Subsystem keep) {
  int da = s.dim_a();
  int db = s.dim_b();
  const ComplexMatrix& m = s.state().matrix();
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i) {
      for (int k = 0; k < da; ++k) {
        for (int j = 0; j < db; ++j) out(i, k) += m(i * db + j, k * db + j);
      }
    }
    return DensityMatrix(std::move(out));
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int j = 0; j < db; ++j) {
    for (int l = 0; l < db; ++l) {
      for (int i = 0; i < da; ++i) out(j, l) += m(i * db + j, i * db + l);
    }
  }
  return DensityMatrix(std::move(out));
}

/// Trace-norm distance ||rho - sigma||_tr, the unnormalized sum of singular
/// values of the difference; ranges over [0, 2] for states.
inline double trace_norm_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("trace_norm_distance: dimension mismatch");
  }
  ComplexMatrix diff = rho.matrix() - sigma.matrix();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace totalcoh
