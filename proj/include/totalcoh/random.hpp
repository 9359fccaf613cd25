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

#include <cmath>
#include <stdexcept>
#include <vector>

#include "totalcoh/linalg.hpp"
#include "totalcoh/rng.hpp"

namespace totalcoh {

/// Matrix of iid standard complex Gaussians, filled column by column.
inline ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) g(i, j) = rng.next_complex_gaussian();
  }
  return g;
}

/// Haar-random unitary: QR of a Ginibre matrix with the columns of Q
/// rephased by r_jj/|r_jj| so the distribution is exactly Haar.
inline ComplexMatrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_unitary: dim must be >= 1");
  ComplexMatrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    double a = std::abs(r(j, j));
    std::complex<double> phase = a > 0.0 ? r(j, j) / a : std::complex<double>(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

/// Random rank-r state G G^dag / Tr(G G^dag) with G a dim x rank Ginibre
/// matrix (Hilbert-Schmidt measure at rank = dim).
inline DensityMatrix random_density(int dim, int rank, Rng& rng) {
  if (dim < 1 || rank < 1 || rank > dim) {
    throw std::invalid_argument("random_density: need 1 <= rank <= dim");
  }
  ComplexMatrix g = ginibre(dim, rank, rng);
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  w = (0.5 * (w + w.adjoint())).eval();
  return DensityMatrix(std::move(w));
}

inline DensityMatrix random_pure(int dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("random_pure: dim must be >= 1");
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.next_complex_gaussian();
  return DensityMatrix::pure(v);
}

/// Tensor product of two independently sampled full-rank states.
inline BipartiteState random_product(int dim_a, int dim_b, Rng& rng) {
  DensityMatrix a = random_density(dim_a, dim_a, rng);
  DensityMatrix b = random_density(dim_b, dim_b, rng);
  return BipartiteState(dim_a, dim_b, tensor(a, b));
}

/// Flat-Dirichlet weights via normalized exponentials; every entry strictly
/// positive.
inline std::vector<double> random_simplex(int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("random_simplex: k must be >= 1");
  std::vector<double> w(k);
  double sum = 0.0;
  for (double& x : w) {
    x = std::max(-std::log(1.0 - rng.next_double()), 1e-12);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace totalcoh
