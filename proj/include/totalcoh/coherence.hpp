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
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "totalcoh/linalg.hpp"
#include "totalcoh/random.hpp"

namespace totalcoh {

/// A mixed-unitary (random-unitary) channel sum_i p_i U_i rho U_i^dag.
/// These are exactly the free operations of the basis-free coherence
/// resource theory: unital, so entropy never decreases under them.
class MixedUnitaryChannel {
 public:
  struct Term {
    double weight;
    ComplexMatrix unitary;
  };

  explicit MixedUnitaryChannel(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("MixedUnitaryChannel: no terms");
    int d = static_cast<int>(terms_.front().unitary.rows());
    double wsum = 0.0;
    for (const Term& t : terms_) {
      if (t.unitary.rows() != d || t.unitary.cols() != d) {
        throw std::invalid_argument("MixedUnitaryChannel: mixed dimensions");
      }
      if (!(t.weight > 0.0) || t.weight > 1.0) {
        throw std::invalid_argument("MixedUnitaryChannel: weights must be in (0, 1]");
      }
      if (!is_unitary(t.unitary)) {
        throw std::invalid_argument("MixedUnitaryChannel: non-unitary term");
      }
      wsum += t.weight;
    }
    if (std::abs(wsum - 1.0) > 1e-10) {
      throw std::invalid_argument("MixedUnitaryChannel: weights must sum to 1");
    }
  }

  int dim() const { return static_cast<int>(terms_.front().unitary.rows()); }
  const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// The basis-free coherence C_R(rho) = log2(dim) - S(rho), in bits. Zero
/// exactly on the maximally mixed state, log2(dim) on every pure state;
/// equals the relative entropy from rho to I/dim.
inline double total_coherence(const DensityMatrix& rho) {
  return std::log2(static_cast<double>(rho.dim())) - von_neumann_entropy(rho);
}

inline DensityMatrix apply_channel(const MixedUnitaryChannel& ch, const DensityMatrix& rho) {
  if (ch.dim() != rho.dim()) {
    throw std::invalid_argument("apply_channel: dimension mismatch");
  }
  ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& t : ch.terms()) {
    out.noalias() += t.weight * (t.unitary * rho.matrix() * t.unitary.adjoint());
  }
  out = (0.5 * (out + out.adjoint())).eval();
  return DensityMatrix(std::move(out));
}

/// The uniform mixture of all dim^2 Weyl-Heisenberg unitaries X^a Z^b
/// (X the cyclic shift, Z the diagonal of dim-th roots of unity).
/// Applying it sends every input to I/dim.
inline MixedUnitaryChannel complete_decoherence_channel(int dim) {
  if (dim < 1) throw std::invalid_argument("complete_decoherence_channel: dim must be >= 1");
  ComplexMatrix shift = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) shift((i + 1) % dim, i) = 1.0;
  ComplexMatrix clock = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    double angle = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(dim);
    clock(i, i) = std::polar(1.0, angle);
  }
  std::vector<MixedUnitaryChannel::Term> terms;
  terms.reserve(static_cast<std::size_t>(dim) * dim);
  double w = 1.0 / (static_cast<double>(dim) * dim);
  ComplexMatrix xa = ComplexMatrix::Identity(dim, dim);
  for (int a = 0; a < dim; ++a) {
    ComplexMatrix xazb = xa;
    for (int b = 0; b < dim; ++b) {
      terms.push_back({w, xazb});
      xazb = xazb * clock;
    }
    xa = shift * xa;
  }
  return MixedUnitaryChannel(std::move(terms));
}

/// True iff rho is within trace-norm tol of the unique free state I/dim.
inline bool is_incoherent_state(const DensityMatrix& rho, double tol) {
  return trace_norm_distance(rho, DensityMatrix::maximally_mixed(rho.dim())) <= tol;
}

/// The pure-state-decomposition formation measure degenerates to the
/// constant log2(dim): every pure state has the same maximal coherence.
inline double coherence_of_formation(int dim) {
  if (dim < 1) throw std::invalid_argument("coherence_of_formation: dim must be >= 1");
  return std::log2(static_cast<double>(dim));
}

/// Channel with flat-Dirichlet weights over Haar-random unitaries; the
/// standard fuzz-test input.
inline MixedUnitaryChannel random_mixed_unitary_channel(int dim, int num_terms, Rng& rng) {
  std::vector<double> w = random_simplex(num_terms, rng);
  std::vector<MixedUnitaryChannel::Term> terms;
  terms.reserve(static_cast<std::size_t>(num_terms));
  for (int i = 0; i < num_terms; ++i) {
    terms.push_back({w[static_cast<std::size_t>(i)], random_unitary(dim, rng)});
  }
  return MixedUnitaryChannel(std::move(terms));
}

}  // namespace totalcoh
