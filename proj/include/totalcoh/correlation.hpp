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

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "totalcoh/coherence.hpp"
#include "totalcoh/linalg.hpp"

namespace totalcoh {

/// A density matrix with a declared three-factor tensor split, A on the left
/// (index (i*dim_b + j)*dim_c + k).
class TripartiteState {
 public:
  TripartiteState(int dim_a, int dim_b, int dim_c, DensityMatrix state)
      : dim_a_(dim_a), dim_b_(dim_b), dim_c_(dim_c), state_(std::move(state)) {
    if (dim_a_ < 1 || dim_b_ < 1 || dim_c_ < 1 ||
        state_.dim() != dim_a_ * dim_b_ * dim_c_) {
      throw std::invalid_argument("TripartiteState: dims must factor the state dim");
    }
  }

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim_c() const { return dim_c_; }
  const DensityMatrix& state() const { return state_; }

 private:
  int dim_a_;
  int dim_b_;
  int dim_c_;
  DensityMatrix state_;
};

inline DensityMatrix reduce_ab(const TripartiteState& t) {
  return partial_trace(BipartiteState(t.dim_a() * t.dim_b(), t.dim_c(), t.state()),
                       Subsystem::A);
}

inline DensityMatrix reduce_bc(const TripartiteState& t) {
  return partial_trace(BipartiteState(t.dim_a(), t.dim_b() * t.dim_c(), t.state()),
                       Subsystem::B);
}

inline DensityMatrix reduce_b(const TripartiteState& t) {
  return partial_trace(BipartiteState(t.dim_b(), t.dim_c(), reduce_bc(t)), Subsystem::A);
}

/// Total correlation I(A:B) = S(A) + S(B) - S(AB) in bits; the relative
/// entropy from the state to the product-state set.
inline double mutual_information(const BipartiteState& s) {
  double sa = von_neumann_entropy(partial_trace(s, Subsystem::A));
  double sb = von_neumann_entropy(partial_trace(s, Subsystem::B));
  double sab = von_neumann_entropy(s.state());
  return sa + sb - sab;
}

/// dim-point discrete Fourier matrix, entries omega^(jk)/sqrt(dim).
inline ComplexMatrix fourier_matrix(int dim) {
  if (dim < 1) throw std::invalid_argument("fourier_matrix: dim must be >= 1");
  ComplexMatrix f(dim, dim);
  double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      double angle = 2.0 * M_PI * static_cast<double>((j * k) % dim) / static_cast<double>(dim);
      f(j, k) = std::polar(scale, angle);
    }
  }
  return f;
}

/// A unitary that flattens the diagonal: with rho = V diag(lambda) V^dag,
/// conjugating by F V^dag makes every diagonal entry of the result
/// (1/dim) sum(lambda) = 1/dim. In that frame the basis-dependent coherence
/// of the state equals its basis-free coherence.
inline ComplexMatrix uniform_diagonal_rotation(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho.matrix());
  return fourier_matrix(rho.dim()) * es.eigenvectors().adjoint();
}

/// Generalized CNOT on an n x m composite with S as control: the permutation
/// sum_{i,j} |i><i|_S (x) |mod(i+j, m)><j|_A.
inline ComplexMatrix generalized_cnot(int n, int m) {
  if (n < 1 || m < 1) throw std::invalid_argument("generalized_cnot: dims must be >= 1");
  ComplexMatrix u = ComplexMatrix::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) u(i * m + (i + j) % m, i * m + j) = 1.0;
  }
  return u;
}

/// Outcome of the coherence-to-correlation protocol. equality_slack is the
/// coherence not converted into mutual information; it is nonnegative for
/// every channel and zero (to tolerance) for the protocol unitary when
/// ancilla_dim >= dim.
struct ConversionReport {
  double input_coherence;
  double output_mutual_information;
  DensityMatrix reduced_s;
  DensityMatrix reduced_a;
  double equality_slack;
  ComplexMatrix unitary_used;
  bool saturation_expected;  // ancilla_dim >= dim; below that the equality is not asserted
};

/// Converts the coherence of rho into total correlation with a maximally
/// mixed ancilla: rotate rho to a uniform diagonal, adjoin I_m/m, apply the
/// generalized CNOT. For m >= n the output's mutual information equals
/// C_R(rho) and both marginals are maximally mixed.
inline ConversionReport coherence_to_correlation(const DensityMatrix& rho, int ancilla_dim) {
  int n = rho.dim();
  int m = ancilla_dim;
  if (m < 1) throw std::invalid_argument("coherence_to_correlation: ancilla_dim must be >= 1");
  ComplexMatrix rotation = uniform_diagonal_rotation(rho);
  ComplexMatrix rotated = rotation * rho.matrix() * rotation.adjoint();
  DensityMatrix rho_tilde((0.5 * (rotated + rotated.adjoint())).eval());
  DensityMatrix joint_in = tensor(rho_tilde, DensityMatrix::maximally_mixed(m));
  ComplexMatrix cnot = generalized_cnot(n, m);
  ComplexMatrix out = cnot * joint_in.matrix() * cnot.adjoint();
  BipartiteState composite(n, m, DensityMatrix((0.5 * (out + out.adjoint())).eval()));
  double coherence = total_coherence(rho);
  double info = mutual_information(composite);
  ComplexMatrix total_unitary =
      cnot * Eigen::kroneckerProduct(rotation, ComplexMatrix::Identity(m, m));
  return ConversionReport{coherence,
                          info,
                          partial_trace(composite, Subsystem::A),
                          partial_trace(composite, Subsystem::B),
                          coherence - info,
                          std::move(total_unitary),
                          m >= n};
}

/// Slack of the correlation bound for an arbitrary mixed-unitary channel on
/// the composite: C_R(rho) - I(ch[rho (x) I_m/m]). Nonnegative for every
/// channel; the fuzz suites hammer exactly this quantity.
inline double correlation_bound_slack(const DensityMatrix& rho, int m,
                                      const MixedUnitaryChannel& ch) {
  if (m < 1) throw std::invalid_argument("correlation_bound_slack: m must be >= 1");
  if (ch.dim() != rho.dim() * m) {
    throw std::invalid_argument("correlation_bound_slack: channel dimension mismatch");
  }
  DensityMatrix joint = tensor(rho, DensityMatrix::maximally_mixed(m));
  DensityMatrix out = apply_channel(ch, joint);
  return total_coherence(rho) - mutual_information(BipartiteState(rho.dim(), m, out));
}

/// Mutual information as residual coherence: lhs = I(A:B), rhs =
/// C_R(AB) - C_R(A) - C_R(B). The two sides agree identically; both are
/// returned so the caller can watch the algebra cancel.
inline std::pair<double, double> residual_coherence_identity(const BipartiteState& s) {
  double lhs = mutual_information(s);
  double rhs = total_coherence(s.state()) -
               total_coherence(partial_trace(s, Subsystem::A)) -
               total_coherence(partial_trace(s, Subsystem::B));
  return {lhs, rhs};
}

/// C_R(ABC) - C_R(AB) - C_R(BC) + C_R(B); nonnegative by strong
/// subadditivity of the entropy.
inline double strong_subadditivity_slack(const TripartiteState& t) {
  return total_coherence(t.state()) - total_coherence(reduce_ab(t)) -
         total_coherence(reduce_bc(t)) + total_coherence(reduce_b(t));
}

/// For a bipartite pure state: E = S(rho_A), the entropy of entanglement,
/// and the gap between the maximal assisted coherence log2(dim_A) and
/// C_R(rho_A). The two coincide.
inline std::pair<double, double> pure_entanglement_gap(const BipartiteState& psi) {
  const Spectrum spec = eigen_spectrum(psi.state());
  if (spec.probs().front() < 1.0 - 1e-9) {
    throw std::invalid_argument("pure_entanglement_gap: state is not pure");
  }
  DensityMatrix rho_a = partial_trace(psi, Subsystem::A);
  double entanglement = von_neumann_entropy(rho_a);
  double gap = std::log2(static_cast<double>(psi.dim_a())) - total_coherence(rho_a);
  return {entanglement, gap};
}

inline double binary_entropy(double x) {
  double acc = 0.0;
  if (x > 0.0) acc -= x * std::log2(x);
  if (x < 1.0) acc -= (1.0 - x) * std::log2(1.0 - x);
  return acc;
}

/// Wootters concurrence of a two-qubit state: max(0, mu1 - mu2 - mu3 - mu4)
/// with mu_i the descending square roots of the eigenvalues of
/// rho (Y(x)Y) rho* (Y(x)Y).
inline double concurrence_2x2(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("concurrence_2x2: state must be 2x2 bipartite");
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  ComplexMatrix r = rho.matrix() * yy * rho.matrix().conjugate() * yy;
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(r, /*computeEigenvectors=*/false);
  std::array<double, 4> mu{};
  for (int i = 0; i < 4; ++i) {
    mu[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, ces.eigenvalues()[i].real()));
  }
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

/// Entanglement of formation of a two-qubit state against its coherence-gap
/// bound log2(2) - C_R(rho_A) = S(rho_A); eof never exceeds the bound.
inline std::pair<double, double> mixed_entanglement_bound_2x2(const BipartiteState& s) {
  if (s.dim_a() != 2 || s.dim_b() != 2) {
    throw std::invalid_argument("mixed_entanglement_bound_2x2: state must be 2 (x) 2");
  }
  double c = concurrence_2x2(s.state());
  double eof = binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c))));
  double bound = 1.0 - total_coherence(partial_trace(s, Subsystem::A));
  return {eof, bound};
}

}  // namespace totalcoh
