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
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "totalcoh/linalg.hpp"

namespace totalcoh {

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();
inline constexpr double kLn2 = 0.69314718055994530942;

/// Compensated (Kahan) accumulator for long sums of small terms.
class KahanSum {
 public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// log2(2^a + 2^b); either argument may be -infinity (an empty term).
inline double log2_add(double a, double b) {
  if (a == kNegInfinity) return b;
  if (b == kNegInfinity) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp2(b - a)) / kLn2;
}

/// One type class of a tensor-power spectrum: an eigenvalue 2^log2_value
/// occurring 2^log2_multiplicity times. Neither number is materialized in
/// linear domain, so n can reach the tens of thousands.
struct SpectrumAtom {
  double log2_value;
  double log2_multiplicity;
};

class WeightedSpectrum {
 public:
  explicit WeightedSpectrum(std::vector<SpectrumAtom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("WeightedSpectrum: empty");
    for (std::size_t i = 0; i + 1 < atoms_.size(); ++i) {
      if (!(atoms_[i].log2_value > atoms_[i + 1].log2_value)) {
        throw std::invalid_argument(
            "WeightedSpectrum: log2 values must be strictly decreasing");
      }
    }
    double w = total_weight();
    if (std::abs(w - 1.0) > 1e-9) {
      throw std::invalid_argument("WeightedSpectrum: total weight " +
                                  std::to_string(w) + " != 1");
    }
  }

  const std::vector<SpectrumAtom>& atoms() const { return atoms_; }

  /// Sum of 2^(value+multiplicity) over atoms via exponent-shifted
  /// compensated accumulation; equals 1 for a spectrum.
  double total_weight() const {
    double shift = kNegInfinity;
    for (const auto& a : atoms_) shift = std::max(shift, a.log2_value + a.log2_multiplicity);
    KahanSum acc;
    for (const auto& a : atoms_) {
      acc.add(std::exp2(a.log2_value + a.log2_multiplicity - shift));
    }
    return std::exp2(shift) * acc.value();
  }

  /// Shannon entropy (bits) of the spectrum the atoms describe:
  /// -sum over eigenvalues of lambda*log2(lambda).
  double entropy_bits() const {
    KahanSum acc;
    for (const auto& a : atoms_) {
      acc.add(-std::exp2(a.log2_value + a.log2_multiplicity) * a.log2_value);
    }
    return acc.value();
  }

 private:
  std::vector<SpectrumAtom> atoms_;
};

namespace detail {

// Log-factorials in extended precision; cumulative log sums keep the
// absolute error around 1e-13 even at n = 100000, where lgamma's few-ulp
// error on values near 1e6 would already cost ~1e-9 in total weight.
inline std::vector<long double> log_factorials(long n) {
  std::vector<long double> lf(static_cast<std::size_t>(n) + 1, 0.0L);
  for (long k = 1; k <= n; ++k) {
    lf[static_cast<std::size_t>(k)] =
        lf[static_cast<std::size_t>(k) - 1] + std::log(static_cast<long double>(k));
  }
  return lf;
}

}  // namespace detail

/// Spectrum of rho^(x)n as type-class atoms, one per composition of n into
/// d nonzero-eigenvalue parts. Never materializes the d^n eigenvalues: each
/// atom carries log2(lambda_1^k1 ... lambda_d^kd) and the log2 multinomial
/// coefficient. Atoms whose log2 values coincide within 1e-12 are merged.
inline WeightedSpectrum tensor_power_spectrum(const Spectrum& base, long n) {
  if (n < 1) throw std::invalid_argument("tensor_power_spectrum: n must be >= 1");
  std::vector<double> lambda;
  for (double p : base.probs()) {
    if (p > 0.0) lambda.push_back(p);  // zero eigenvalues carry no weight
  }
  int d = static_cast<int>(lambda.size());
  if (d > 8) {
    throw std::invalid_argument(
        "tensor_power_spectrum: more than 8 nonzero eigenvalues");
  }
  double natoms = 1.0;  // C(n+d-1, d-1)
  for (int j = 1; j < d; ++j) natoms = natoms * static_cast<double>(n + j) / j;
  if (natoms > 4.2e6) {
    throw std::invalid_argument("tensor_power_spectrum: type-class count too large");
  }

  std::vector<double> log2_lambda(d);
  for (int j = 0; j < d; ++j) log2_lambda[j] = std::log2(lambda[j]);
  std::vector<long double> lf = detail::log_factorials(n);
  const long double ln2 = 0.693147180559945309417L;

  std::vector<SpectrumAtom> atoms;
  atoms.reserve(static_cast<std::size_t>(natoms) + 1);
  std::vector<long> counts(d, 0);
  auto emit = [&](int last, long double lf_partial, double v_partial) {
    long k_last = counts[last];
    double v = v_partial + static_cast<double>(k_last) * log2_lambda[last];
    long double lgm =
        (lf[static_cast<std::size_t>(n)] - lf_partial - lf[static_cast<std::size_t>(k_last)]) / ln2;
    atoms.push_back({v, static_cast<double>(lgm)});
  };
  // depth-first over compositions (k_0, ..., k_{d-1}) with sum n
  auto recurse = [&](auto&& self, int idx, long remaining, long double lf_acc,
                     double v_acc) -> void {
    if (idx == d - 1) {
      counts[idx] = remaining;
      emit(idx, lf_acc, v_acc);
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      counts[idx] = k;
      self(self, idx + 1, remaining - k, lf_acc + lf[static_cast<std::size_t>(k)],
           v_acc + static_cast<double>(k) * log2_lambda[idx]);
    }
  };
  recurse(recurse, 0, n, 0.0L, 0.0);

  std::sort(atoms.begin(), atoms.end(),
            [](const SpectrumAtom& a, const SpectrumAtom& b) {
              return a.log2_value > b.log2_value;
            });
  std::vector<SpectrumAtom> merged;
  merged.reserve(atoms.size());
  for (const auto& a : atoms) {
    if (!merged.empty() && merged.back().log2_value - a.log2_value <= 1e-12) {
      merged.back().log2_multiplicity =
          log2_add(merged.back().log2_multiplicity, a.log2_multiplicity);
    } else {
      merged.push_back(a);
    }
  }
  return WeightedSpectrum(std::move(merged));
}

}  // namespace totalcoh
