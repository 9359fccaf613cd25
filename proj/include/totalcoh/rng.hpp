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
#include <cstdint>

namespace totalcoh {

/// Deterministic counter-based generator: SplitMix64 finalizer over a Weyl
/// sequence, Gaussians via Box-Muller. No std:: distributions are involved,
/// so a fixed seed yields the same stream on every platform and standard
/// library. An Rng must not be shared between threads; derive per-task
/// generators with split() instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0. Multiply-shift reduction; the bias is
  /// below 2^-64 per draw.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// Standard normal. Box-Muller consumes two uniforms and produces two
  /// variates; the second is cached.
  double next_gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = next_double();
    double radius = std::sqrt(-2.0 * std::log(u1));
    double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> next_complex_gaussian() {
    double re = next_gaussian();
    double im = next_gaussian();
    return {re, im};
  }

  /// Independent child generator. Pure function of the construction seed and
  /// the stream index, so trial k of a fuzz loop sees the same inputs no
  /// matter how much the parent has been advanced.
  Rng split(std::uint64_t stream) const {
    return Rng(mix64(seed_ ^ mix64(stream + 0x9e3779b97f4a7c15ull)));
  }

  std::uint64_t seed() const { return seed_; }

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t seed_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace totalcoh
