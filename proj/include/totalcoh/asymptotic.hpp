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
#include <string>
#include <utility>
#include <vector>

#include "totalcoh/coherence.hpp"
#include "totalcoh/linalg.hpp"
#include "totalcoh/tensor_power.hpp"

namespace totalcoh {

enum class RateMode { distill, cost };

inline const char* to_string(RateMode mode) {
  return mode == RateMode::distill ? "distill" : "cost";
}

/// Finite-copy rate question: n copies of a state with the given base
/// spectrum, trace-norm accuracy budget epsilon.
class RateQuery {
 public:
  RateQuery(Spectrum base, long n, double epsilon, RateMode mode)
      : base_(std::move(base)), n_(n), epsilon_(epsilon), mode_(mode) {
    if (n_ < 1) throw std::invalid_argument("RateQuery: n must be >= 1");
    if (!(epsilon_ > 0.0) || epsilon_ > 0.5) {
      throw std::invalid_argument("RateQuery: epsilon must be in (0, 0.5]");
    }
  }

  const Spectrum& base() const { return base_; }
  long n() const { return n_; }
  double epsilon() const { return epsilon_; }
  RateMode mode() const { return mode_; }

 private:
  Spectrum base_;
  long n_;
  double epsilon_;
  RateMode mode_;
};

struct RateRow {
  long n;
  long m;
  double rate;
  double epsilon;
  RateMode mode;
};

class RateTable {
 public:
  explicit RateTable(std::vector<RateRow> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i + 1 < rows_.size(); ++i) {
      if (rows_[i].n >= rows_[i + 1].n) {
        throw std::invalid_argument("RateTable: rows must be sorted by n");
      }
    }
    for (const auto& r : rows_) {
      if (r.rate < 0.0) throw std::invalid_argument("RateTable: negative rate");
    }
  }

  const std::vector<RateRow>& rows() const { return rows_; }

 private:
  std::vector<RateRow> rows_;
};

/// Both asymptotic rates collapse to the coherence measure itself; the
/// finite-n oracles below demonstrate the convergence numerically.
inline double distillable_total_coherence(const DensityMatrix& rho) {
  return total_coherence(rho);
}

inline double total_coherence_cost(const DensityMatrix& rho) {
  return total_coherence(rho);
}

namespace detail {

// 2^x replaced by its floor when small enough to represent; for larger x the
// flooring error is below 2^-51 of the included mass and is ignored.
inline double log2_floor_pow2(double x) {
  if (x < 52.0) {
    double k = std::floor(std::exp2(x));
    return k > 0.0 ? std::log2(k) : kNegInfinity;
  }
  return x;
}

// Weight of the top-K eigenvalues of the spectrum, K = 2^log2_k, walking
// type-class atoms in descending value order and splitting the boundary atom.
inline double top_k_mass(const WeightedSpectrum& ws, double log2_k) {
  if (log2_k == kNegInfinity) return 0.0;
  KahanSum mass;
  double log2_count = kNegInfinity;
  for (const auto& atom : ws.atoms()) {
    double log2_count_new = log2_add(log2_count, atom.log2_multiplicity);
    if (log2_count_new >= log2_k) {
      // boundary atom: only K - count of its eigenvalues fit
      double frac = log2_count == kNegInfinity
                        ? 1.0
                        : -std::expm1(kLn2 * (log2_count - log2_k));
      mass.add(std::exp2(log2_k + atom.log2_value) * std::max(frac, 0.0));
      return mass.value();
    }
    mass.add(std::exp2(atom.log2_multiplicity + atom.log2_value));
    log2_count = log2_count_new;
  }
  return mass.value();
}

// sum over eigenvalues of max(lambda - t, 0) with clip level t = 2^log2_t.
inline double clip_excess(const WeightedSpectrum& ws, double log2_t) {
  KahanSum excess;
  for (const auto& atom : ws.atoms()) {
    if (atom.log2_value <= log2_t) break;  // atoms descend; nothing further clips
    double frac = -std::expm1(kLn2 * (log2_t - atom.log2_value));
    excess.add(std::exp2(atom.log2_multiplicity + atom.log2_value) * frac);
  }
  return excess.value();
}

}  // namespace detail

/// Largest m such that the top floor(d^n / 2^m) eigenvalues of rho^(x)n hold
/// at least 1 - epsilon of the weight: the typical-subspace projection keeps
/// that much mass, and the projected spectrum majorizes the uniform target
/// |psi><psi|^(x)m tensored with a maximally mixed remainder. All counts stay
/// in log2 domain.
inline long one_shot_distill_m(const RateQuery& q) {
  if (q.mode() != RateMode::distill) {
    throw std::invalid_argument("one_shot_distill_m: query mode must be distill");
  }
  WeightedSpectrum ws = tensor_power_spectrum(q.base(), q.n());
  double log2_total = static_cast<double>(q.n()) * std::log2(static_cast<double>(q.base().size()));
  double threshold = 1.0 - q.epsilon() - 1e-12;
  auto feasible = [&](long m) {
    double log2_k = detail::log2_floor_pow2(log2_total - static_cast<double>(m));
    if (log2_k < 0.0) return false;  // K = 0
    return detail::top_k_mass(ws, log2_k) >= threshold;
  };
  long lo = 0;  // K = d^n keeps everything
  long hi = static_cast<long>(std::floor(log2_total + 1e-9));
  if (feasible(hi)) return hi;
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

/// Smallest m such that clipping the spectrum of rho^(x)n at t = 2^m / d^n
/// discards at most epsilon of weight: the clipped state is majorized by the
/// uniform source |psi><psi|^(x)m tensor I_K/K, so a mixed-unitary map
/// prepares it, and the clip perturbs rho^(x)n by at most 2*epsilon in trace
/// norm.
inline long one_shot_cost_m(const RateQuery& q) {
  if (q.mode() != RateMode::cost) {
    throw std::invalid_argument("one_shot_cost_m: query mode must be cost");
  }
  WeightedSpectrum ws = tensor_power_spectrum(q.base(), q.n());
  double log2_total = static_cast<double>(q.n()) * std::log2(static_cast<double>(q.base().size()));
  auto feasible = [&](long m) {
    double log2_t = static_cast<double>(m) - log2_total;
    return detail::clip_excess(ws, log2_t) <= q.epsilon() + 1e-12;
  };
  if (feasible(0)) return 0;
  long lo = 0;
  long hi = static_cast<long>(std::ceil(log2_total - 1e-9));  // t >= 1: nothing clips
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (feasible(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

/// One-shot m and rate m/n for each requested n, ascending.
inline RateTable rate_sweep(const Spectrum& base, double epsilon,
                            std::vector<long> n_list, RateMode mode) {
  std::sort(n_list.begin(), n_list.end());
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());
  std::vector<RateRow> rows;
  rows.reserve(n_list.size());
  for (long n : n_list) {
    RateQuery q(base, n, epsilon, mode);
    long m = mode == RateMode::distill ? one_shot_distill_m(q) : one_shot_cost_m(q);
    rows.push_back({n, m, static_cast<double>(m) / static_cast<double>(n), epsilon, mode});
  }
  return RateTable(std::move(rows));
}

}  // namespace totalcoh
