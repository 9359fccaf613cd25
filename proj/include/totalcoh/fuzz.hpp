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

#include <cstdint>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "totalcoh/coherence.hpp"
#include "totalcoh/correlation.hpp"
#include "totalcoh/linalg.hpp"
#include "totalcoh/random.hpp"
#include "totalcoh/rng.hpp"

namespace totalcoh {

inline constexpr double kFuzzTol = 1e-9;

struct FuzzFailure {
  std::uint64_t seed;    // child seed reproducing the trial
  std::string digest;    // hash of the sampled inputs
  double slack;
};

/// A trial fails when its slack drops below -1e-9; failures are empty iff
/// the worst slack stays above that line.
struct FuzzReport {
  std::string suite;
  long trials;
  std::uint64_t seed;
  std::vector<FuzzFailure> failures;
  double worst_slack;
};

/// FNV-1a over the raw bytes of whatever was sampled; enough to match a
/// failing trial to its inputs in a report.
class InputDigest {
 public:
  void add(double x) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes) {
      hash_ ^= b;
      hash_ *= 1099511628211ull;
    }
  }

  void add(const ComplexMatrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        add(m(i, j).real());
        add(m(i, j).imag());
      }
    }
  }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    std::uint64_t h = hash_;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<std::size_t>(i)] = digits[h & 0xf];
      h >>= 4;
    }
    return out;
  }

 private:
  std::uint64_t hash_ = 14695981039346656037ull;
};

namespace fuzz_detail {

struct Trial {
  double slack;
  std::string digest;
};

// Coherence never grows under a sampled mixed-unitary channel.
inline Trial trial_monotone(Rng& rng) {
  int dim = 2 + static_cast<int>(rng.next_below(7));
  int rank = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dim)));
  DensityMatrix rho = random_density(dim, rank, rng);
  int num_terms = 1 + static_cast<int>(rng.next_below(8));
  MixedUnitaryChannel ch = random_mixed_unitary_channel(dim, num_terms, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  for (const auto& t : ch.terms()) dg.add(t.unitary);
  double slack = total_coherence(rho) - total_coherence(apply_channel(ch, rho));
  return {slack, dg.hex()};
}

// Relative entropy contracts under channels. Full-rank sigma keeps the
// reference value finite.
inline Trial trial_dpi(Rng& rng) {
  int dim = 2 + static_cast<int>(rng.next_below(5));
  int rank = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dim)));
  DensityMatrix rho = random_density(dim, rank, rng);
  DensityMatrix sigma = random_density(dim, dim, rng);
  int num_terms = 1 + static_cast<int>(rng.next_below(8));
  MixedUnitaryChannel ch = random_mixed_unitary_channel(dim, num_terms, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  dg.add(sigma.matrix());
  for (const auto& t : ch.terms()) dg.add(t.unitary);
  double before = relative_entropy(rho, sigma);
  double after = relative_entropy(apply_channel(ch, rho), apply_channel(ch, sigma));
  return {before - after, dg.hex()};
}

// Mutual information extracted from rho (x) I_m/m never beats C_R(rho).
inline Trial trial_bound11(Rng& rng) {
  int n = 2 + static_cast<int>(rng.next_below(3));
  int m = 2 + static_cast<int>(rng.next_below(3));
  int rank = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
  DensityMatrix rho = random_density(n, rank, rng);
  int num_terms = 1 + static_cast<int>(rng.next_below(8));
  MixedUnitaryChannel ch = random_mixed_unitary_channel(n * m, num_terms, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  for (const auto& t : ch.terms()) dg.add(t.unitary);
  return {correlation_bound_slack(rho, m, ch), dg.hex()};
}

inline Trial trial_ssa(Rng& rng) {
  int rank = 1 + static_cast<int>(rng.next_below(8));
  DensityMatrix rho = random_density(8, rank, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  return {strong_subadditivity_slack(TripartiteState(2, 2, 2, rho)), dg.hex()};
}

// |I - (C_R(AB) - C_R(A) - C_R(B))| must vanish; slack is minus the defect.
inline Trial trial_identity14(Rng& rng) {
  int da = 2 + static_cast<int>(rng.next_below(2));
  int db = 2 + static_cast<int>(rng.next_below(3));
  int dim = da * db;
  int rank = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(dim)));
  DensityMatrix rho = random_density(dim, rank, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  auto [lhs, rhs] = residual_coherence_identity(BipartiteState(da, db, rho));
  return {-std::abs(lhs - rhs), dg.hex()};
}

inline Trial trial_eof16(Rng& rng) {
  int rank = 1 + static_cast<int>(rng.next_below(4));
  DensityMatrix rho = random_density(4, rank, rng);
  InputDigest dg;
  dg.add(rho.matrix());
  auto [eof, bound] = mixed_entanglement_bound_2x2(BipartiteState(2, 2, rho));
  return {bound - eof, dg.hex()};
}

}  // namespace fuzz_detail

inline FuzzReport run_fuzz_suite(std::string_view suite, long trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("run_fuzz_suite: trials must be >= 1");
  fuzz_detail::Trial (*fn)(Rng&) = nullptr;
  if (suite == "monotone") {
    fn = fuzz_detail::trial_monotone;
  } else if (suite == "dpi") {
    fn = fuzz_detail::trial_dpi;
  } else if (suite == "bound11") {
    fn = fuzz_detail::trial_bound11;
  } else if (suite == "ssa") {
    fn = fuzz_detail::trial_ssa;
  } else if (suite == "identity14") {
    fn = fuzz_detail::trial_identity14;
  } else if (suite == "eof16") {
    fn = fuzz_detail::trial_eof16;
  } else {
    throw std::invalid_argument("run_fuzz_suite: unknown suite '" + std::string(suite) + "'");
  }

  FuzzReport report{std::string(suite), trials, seed, {},
                    std::numeric_limits<double>::infinity()};
  Rng master(seed);
  for (long i = 0; i < trials; ++i) {
    Rng child = master.split(static_cast<std::uint64_t>(i));
    std::uint64_t child_seed = child.seed();
    fuzz_detail::Trial t = fn(child);
    if (t.slack < report.worst_slack) report.worst_slack = t.slack;
    if (t.slack < -kFuzzTol) {
      report.failures.push_back({child_seed, t.digest, t.slack});
    }
  }
  return report;
}

}  // namespace totalcoh
