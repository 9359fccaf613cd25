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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "totalcoh/coherence.hpp"
#include "totalcoh/linalg.hpp"

namespace totalcoh {

inline constexpr double kMajorizationTol = 1e-10;

class DoublyStochasticMatrix {
 public:
  explicit DoublyStochasticMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    int d = static_cast<int>(entries_.rows());
    if (d < 1 || entries_.cols() != d) {
      throw std::invalid_argument("DoublyStochasticMatrix: must be square");
    }
    if (entries_.minCoeff() < -1e-12) {
      throw std::invalid_argument("DoublyStochasticMatrix: negative entry");
    }
    for (int i = 0; i < d; ++i) {
      if (std::abs(entries_.row(i).sum() - 1.0) > 1e-9 ||
          std::abs(entries_.col(i).sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("DoublyStochasticMatrix: row/column sums must be 1");
      }
    }
  }

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }

 private:
  Eigen::MatrixXd entries_;
};

/// One term of a Birkhoff decomposition: permutation[j] is the row carrying
/// the 1 in column j, i.e. P(permutation[j], j) = 1.
struct PermutationTerm {
  double weight;
  std::vector<int> permutation;
};

class BirkhoffDecomposition {
 public:
  BirkhoffDecomposition(std::vector<PermutationTerm> terms, const Eigen::MatrixXd& source)
      : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("BirkhoffDecomposition: no terms");
    int d = static_cast<int>(source.rows());
    double wsum = 0.0;
    for (const auto& t : terms_) {
      if (!(t.weight > 0.0)) {
        throw std::invalid_argument("BirkhoffDecomposition: weights must be positive");
      }
      wsum += t.weight;
      if (static_cast<int>(t.permutation.size()) != d) {
        throw std::invalid_argument("BirkhoffDecomposition: permutation size mismatch");
      }
      std::vector<bool> seen(t.permutation.size(), false);
      for (int row : t.permutation) {
        if (row < 0 || row >= d || seen[static_cast<std::size_t>(row)]) {
          throw std::invalid_argument("BirkhoffDecomposition: not a bijection");
        }
        seen[static_cast<std::size_t>(row)] = true;
      }
    }
    if (std::abs(wsum - 1.0) > 1e-9) {
      throw std::invalid_argument("BirkhoffDecomposition: weights must sum to 1");
    }
    if ((reconstruct(d) - source).cwiseAbs().maxCoeff() > 1e-8) {
      throw std::invalid_argument("BirkhoffDecomposition: does not reproduce source");
    }
  }

  const std::vector<PermutationTerm>& terms() const { return terms_; }

  Eigen::MatrixXd reconstruct(int dim) const {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& t : terms_) {
      for (int j = 0; j < dim; ++j) m(t.permutation[static_cast<std::size_t>(j)], j) += t.weight;
    }
    return m;
  }

 private:
  std::vector<PermutationTerm> terms_;
};

/// p majorizes q: every prefix sum of p dominates that of q (descending
/// order is a Spectrum invariant), totals equal. Boundary ties count as
/// majorized, so the convertible set is closed.
inline bool majorizes(const Spectrum& p, const Spectrum& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("majorizes: length mismatch (zero-pad the shorter)");
  }
  if (std::abs(p.sum() - q.sum()) > 1e-9) return false;
  double pp = 0.0;
  double qq = 0.0;
  for (int i = 0; i < p.size(); ++i) {
    pp += p.probs()[static_cast<std::size_t>(i)];
    qq += q.probs()[static_cast<std::size_t>(i)];
    if (pp < qq - kMajorizationTol) return false;
  }
  return true;
}

/// Single-copy convertibility: rho can reach sigma under a mixed-unitary
/// channel iff spec(rho) majorizes spec(sigma).
inline bool can_convert(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("can_convert: states must have equal dimension");
  }
  return majorizes(eigen_spectrum(rho), eigen_spectrum(sigma));
}

/// Hardy-Littlewood-Polya construction: a product of at most dim-1
/// T-transforms (convex mixes of the identity with one transposition)
/// carrying p to q. Requires majorizes(p, q).
inline DoublyStochasticMatrix doubly_stochastic_from_majorization(const Spectrum& p,
                                                                  const Spectrum& q) {
  if (!majorizes(p, q)) {
    throw std::invalid_argument("doubly_stochastic_from_majorization: p does not majorize q");
  }
  int d = p.size();
  Eigen::MatrixXd dmat = Eigen::MatrixXd::Identity(d, d);
  std::vector<double> cur = p.probs();
  const std::vector<double>& tgt = q.probs();
  const double tol = 1e-12;
  for (int step = 0; step <= d; ++step) {
    int k = -1;  // first coordinate still needing mass
    for (int i = 0; i < d; ++i) {
      if (tgt[static_cast<std::size_t>(i)] - cur[static_cast<std::size_t>(i)] > tol) {
        k = i;
        break;
      }
    }
    if (k < 0) return DoublyStochasticMatrix(std::move(dmat));
    int j = -1;  // nearest donor above it
    for (int i = k - 1; i >= 0; --i) {
      if (cur[static_cast<std::size_t>(i)] - tgt[static_cast<std::size_t>(i)] > tol) {
        j = i;
        break;
      }
    }
    if (j < 0) {
      throw std::runtime_error("doubly_stochastic_from_majorization: no donor found");
    }
    double surplus = cur[static_cast<std::size_t>(j)] - tgt[static_cast<std::size_t>(j)];
    double deficit = tgt[static_cast<std::size_t>(k)] - cur[static_cast<std::size_t>(k)];
    double delta = std::min(surplus, deficit);
    double t = 1.0 - delta / (cur[static_cast<std::size_t>(j)] - cur[static_cast<std::size_t>(k)]);
    Eigen::MatrixXd tmat = Eigen::MatrixXd::Identity(d, d);
    tmat(j, j) = t;
    tmat(k, k) = t;
    tmat(j, k) = 1.0 - t;
    tmat(k, j) = 1.0 - t;
    dmat = tmat * dmat;
    double nj = cur[static_cast<std::size_t>(j)] - delta;
    double nk = cur[static_cast<std::size_t>(k)] + delta;
    // snap the matched coordinate exactly onto the target to avoid drift
    cur[static_cast<std::size_t>(j)] = (delta == surplus) ? tgt[static_cast<std::size_t>(j)] : nj;
    cur[static_cast<std::size_t>(k)] = (delta == deficit) ? tgt[static_cast<std::size_t>(k)] : nk;
  }
  throw std::runtime_error("doubly_stochastic_from_majorization: T-transform chain too long");
}

namespace detail {

// Kuhn's augmenting-path matching on the bipartite graph of entries above
// threshold. Returns column -> row, or empty if no perfect matching exists.
inline std::vector<int> perfect_matching(const Eigen::MatrixXd& m, double threshold) {
  int d = static_cast<int>(m.rows());
  std::vector<int> row_of_col(static_cast<std::size_t>(d), -1);
  std::vector<int> col_of_row(static_cast<std::size_t>(d), -1);
  std::vector<bool> visited;
  auto try_augment = [&](auto&& self, int col) -> bool {
    for (int row = 0; row < d; ++row) {
      if (m(row, col) <= threshold || visited[static_cast<std::size_t>(row)]) continue;
      visited[static_cast<std::size_t>(row)] = true;
      if (col_of_row[static_cast<std::size_t>(row)] < 0 ||
          self(self, col_of_row[static_cast<std::size_t>(row)])) {
        col_of_row[static_cast<std::size_t>(row)] = col;
        row_of_col[static_cast<std::size_t>(col)] = row;
        return true;
      }
    }
    return false;
  };
  for (int col = 0; col < d; ++col) {
    visited.assign(static_cast<std::size_t>(d), false);
    if (!try_augment(try_augment, col)) return {};
  }
  return row_of_col;
}

}  // namespace detail

/// Greedy Birkhoff-von Neumann decomposition: repeatedly extract a perfect
/// matching on the positive entries and subtract its minimum entry. Stops
/// once the residual mass per row is below 1e-9, then renormalizes; at most
/// (dim-1)^2 + 1 terms.
inline BirkhoffDecomposition birkhoff_decompose(const DoublyStochasticMatrix& dsm) {
  int d = dsm.dim();
  Eigen::MatrixXd rem = dsm.entries().cwiseMax(0.0);
  std::vector<PermutationTerm> terms;
  const int max_terms = (d - 1) * (d - 1) + 1;
  double extracted = 0.0;
  while (1.0 - extracted >= 1e-9) {
    if (static_cast<int>(terms.size()) >= max_terms) {
      throw std::runtime_error("birkhoff_decompose: residual mass after maximum term count");
    }
    std::vector<int> match = detail::perfect_matching(rem, 1e-12);
    if (match.empty()) {
      throw std::runtime_error("birkhoff_decompose: no perfect matching (numerical degeneracy)");
    }
    double w = 2.0;
    for (int j = 0; j < d; ++j) w = std::min(w, rem(match[static_cast<std::size_t>(j)], j));
    for (int j = 0; j < d; ++j) {
      double& cell = rem(match[static_cast<std::size_t>(j)], j);
      cell -= w;
      if (cell < 1e-15) cell = 0.0;
    }
    terms.push_back({w, std::move(match)});
    extracted += w;
  }
  double wsum = 0.0;
  for (const auto& t : terms) wsum += t.weight;
  for (auto& t : terms) t.weight /= wsum;
  return BirkhoffDecomposition(std::move(terms), dsm.entries());
}

/// Constructive single-copy conversion: whenever spec(rho) majorizes
/// spec(sigma), returns a mixed-unitary channel with terms
/// (w_k, V_sigma P_k V_rho^dag) mapping rho onto sigma. The result is
/// verified a posteriori to within trace norm 1e-8, which also covers any
/// eigenvector freedom inside degenerate clusters.
inline MixedUnitaryChannel synthesize_channel(const DensityMatrix& rho,
                                              const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("synthesize_channel: states must have equal dimension");
  }
  int d = rho.dim();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho.matrix());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sigma.matrix());
  // Eigen sorts ascending; flip to descending to match spectra
  ComplexMatrix v_rho(d, d);
  ComplexMatrix v_sigma(d, d);
  std::vector<double> pvals(static_cast<std::size_t>(d));
  std::vector<double> qvals(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    v_rho.col(i) = er.eigenvectors().col(d - 1 - i);
    v_sigma.col(i) = es.eigenvectors().col(d - 1 - i);
    pvals[static_cast<std::size_t>(i)] = std::clamp(er.eigenvalues()[d - 1 - i], 0.0, 1.0);
    qvals[static_cast<std::size_t>(i)] = std::clamp(es.eigenvalues()[d - 1 - i], 0.0, 1.0);
  }
  Spectrum p(pvals);
  Spectrum q(qvals);
  if (!majorizes(p, q)) {
    throw std::invalid_argument("synthesize_channel: states are not convertible");
  }
  BirkhoffDecomposition decomp = birkhoff_decompose(doubly_stochastic_from_majorization(p, q));
  std::vector<MixedUnitaryChannel::Term> terms;
  terms.reserve(decomp.terms().size());
  for (const auto& t : decomp.terms()) {
    ComplexMatrix perm = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) perm(t.permutation[static_cast<std::size_t>(j)], j) = 1.0;
    terms.push_back({t.weight, v_sigma * perm * v_rho.adjoint()});
  }
  MixedUnitaryChannel channel(std::move(terms));
  double err = trace_norm_distance(apply_channel(channel, rho), sigma);
  if (err > 1e-8) {
    throw std::runtime_error("synthesize_channel: reconstruction error " +
                             std::to_string(err) + " exceeds 1e-8");
  }
  return channel;
}

}  // namespace totalcoh
