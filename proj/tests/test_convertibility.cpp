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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "totalcoh/convertibility.hpp"
#include "totalcoh/random.hpp"

using namespace totalcoh;
using Catch::Approx;

namespace {

// q majorized by p: mix p toward the uniform vector; prefix sums shrink
std::vector<double> flatten_toward_uniform(const std::vector<double>& p, double s) {
  std::vector<double> q(p.size());
  double u = 1.0 / static_cast<double>(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = (1.0 - s) * p[i] + s * u;
  return q;
}

Spectrum random_spectrum(int d, Rng& rng) {
  std::vector<double> probs = random_simplex(d, rng);
  std::sort(probs.begin(), probs.end(), std::greater<>());
  return Spectrum(probs);
}

// p majorizing a given q: mix q toward the top basis vector
Spectrum sharpen(const Spectrum& q, double s) {
  std::vector<double> p = q.probs();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] *= (1.0 - s);
  p[0] += s;
  return Spectrum(p);
}

}  // namespace

TEST_CASE("majorization on small examples") {
  CHECK(majorizes(Spectrum({1.0, 0.0}), Spectrum({0.5, 0.5})));
  CHECK_FALSE(majorizes(Spectrum({0.5, 0.5}), Spectrum({0.6, 0.4})));
  CHECK(majorizes(Spectrum({0.6, 0.3, 0.1}), Spectrum({0.5, 0.3, 0.2})));
  CHECK(majorizes(Spectrum({0.5, 0.5}), Spectrum({0.5, 0.5})));
  CHECK_THROWS_AS(majorizes(Spectrum({1.0}), Spectrum({0.5, 0.5})), std::invalid_argument);
}

TEST_CASE("majorization is reflexive and transitive on sampled chains") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int d = 2 + static_cast<int>(rng.next_below(6));
    Spectrum p = random_spectrum(d, rng);
    Spectrum q(flatten_toward_uniform(p.probs(), rng.next_double()));
    Spectrum r(flatten_toward_uniform(q.probs(), rng.next_double()));
    REQUIRE(majorizes(p, p));
    REQUIRE(majorizes(p, q));
    REQUIRE(majorizes(q, r));
    REQUIRE(majorizes(p, r));
  }
}

TEST_CASE("incomparable pairs are rejected both ways") {
  Spectrum p({0.5, 0.5, 0.0, 0.0});
  Spectrum q({0.6, 0.2, 0.1, 0.1});
  CHECK_FALSE(majorizes(p, q));
  CHECK_FALSE(majorizes(q, p));

  Rng rng(12);
  int found = 0;
  for (int trial = 0; trial < 500 && found < 50; ++trial) {
    int d = 3 + static_cast<int>(rng.next_below(4));
    Spectrum a = random_spectrum(d, rng);
    Spectrum b = random_spectrum(d, rng);
    bool ab = majorizes(a, b);
    bool ba = majorizes(b, a);
    // decision procedure must agree with itself under argument swap
    REQUIRE(majorizes(a, b) == ab);
    REQUIRE(majorizes(b, a) == ba);
    if (!ab && !ba) ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("can_convert follows the spectra") {
  Rng rng(13);
  DensityMatrix pure = random_pure(3, rng);
  DensityMatrix any = random_density(3, 3, rng);
  CHECK(can_convert(pure, any));
  DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
  CHECK_FALSE(can_convert(mixed, pure));
  CHECK(can_convert(DensityMatrix::diagonal({0.7, 0.3}), DensityMatrix::diagonal({0.6, 0.4})));
  CHECK_THROWS_AS(can_convert(pure, DensityMatrix::maximally_mixed(4)),
                  std::invalid_argument);
}

TEST_CASE("T-transform chain reproduces the textbook 2x2 example") {
  DoublyStochasticMatrix d =
      doubly_stochastic_from_majorization(Spectrum({0.7, 0.3}), Spectrum({0.6, 0.4}));
  CHECK(d.entries()(0, 0) == Approx(0.75).margin(1e-12));
  CHECK(d.entries()(0, 1) == Approx(0.25).margin(1e-12));
  CHECK(d.entries()(1, 0) == Approx(0.25).margin(1e-12));
  CHECK(d.entries()(1, 1) == Approx(0.75).margin(1e-12));
}

TEST_CASE("T-transform chain maps p onto q") {
  Spectrum p({1.0, 0.0, 0.0});
  Spectrum q({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  DoublyStochasticMatrix d = doubly_stochastic_from_majorization(p, q);
  Eigen::Vector3d pv(1.0, 0.0, 0.0);
  Eigen::Vector3d qv = d.entries() * pv;
  for (int i = 0; i < 3; ++i) CHECK(qv(i) == Approx(1.0 / 3.0).margin(1e-10));

  Spectrum same({0.4, 0.35, 0.25});
  DoublyStochasticMatrix ident = doubly_stochastic_from_majorization(same, same);
  CHECK((ident.entries() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(doubly_stochastic_from_majorization(q, p), std::invalid_argument);
}

TEST_CASE("T-transform chain on sampled majorization pairs") {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 2 + static_cast<int>(rng.next_below(7));
    Spectrum q = random_spectrum(dim, rng);
    Spectrum p = sharpen(q, rng.next_double());
    DoublyStochasticMatrix d = doubly_stochastic_from_majorization(p, q);
    Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.probs().data(), dim);
    Eigen::VectorXd qv = Eigen::Map<const Eigen::VectorXd>(q.probs().data(), dim);
    REQUIRE((d.entries() * pv - qv).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("Birkhoff decomposition basics") {
  DoublyStochasticMatrix ident(Eigen::MatrixXd::Identity(4, 4));
  BirkhoffDecomposition bi = birkhoff_decompose(ident);
  REQUIRE(bi.terms().size() == 1);
  CHECK(bi.terms()[0].weight == Approx(1.0).margin(1e-12));
  for (int j = 0; j < 4; ++j) CHECK(bi.terms()[0].permutation[static_cast<std::size_t>(j)] == j);

  Eigen::MatrixXd t(2, 2);
  t << 0.75, 0.25, 0.25, 0.75;
  BirkhoffDecomposition b2 = birkhoff_decompose(DoublyStochasticMatrix(t));
  REQUIRE(b2.terms().size() == 2);
  double wid = 0.0;
  double wswap = 0.0;
  for (const auto& term : b2.terms()) {
    if (term.permutation[0] == 0) {
      wid = term.weight;
    } else {
      wswap = term.weight;
    }
  }
  CHECK(wid == Approx(0.75).margin(1e-9));
  CHECK(wswap == Approx(0.25).margin(1e-9));

  Eigen::MatrixXd u = Eigen::MatrixXd::Constant(3, 3, 1.0 / 3.0);
  BirkhoffDecomposition b3 = birkhoff_decompose(DoublyStochasticMatrix(u));
  REQUIRE(b3.terms().size() == 3);
  for (const auto& term : b3.terms()) CHECK(term.weight == Approx(1.0 / 3.0).margin(1e-9));
  CHECK((b3.reconstruct(3) - u).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("Birkhoff decomposition on random convex mixes of permutations") {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    int d = 2 + static_cast<int>(rng.next_below(7));
    int nperm = 2 + static_cast<int>(rng.next_below(4));
    std::vector<double> w = random_simplex(nperm, rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int p = 0; p < nperm; ++p) {
      std::vector<int> perm(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
      for (int i = d - 1; i > 0; --i) {
        std::swap(perm[static_cast<std::size_t>(i)],
                  perm[static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)))]);
      }
      for (int j = 0; j < d; ++j) m(perm[static_cast<std::size_t>(j)], j) += w[static_cast<std::size_t>(p)];
    }
    BirkhoffDecomposition bd = birkhoff_decompose(DoublyStochasticMatrix(m));
    REQUIRE(static_cast<int>(bd.terms().size()) <= (d - 1) * (d - 1) + 1);
    REQUIRE((bd.reconstruct(d) - m).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("synthesized channel reproduces the textbook example") {
  DensityMatrix rho = DensityMatrix::diagonal({0.7, 0.3});
  DensityMatrix sigma = DensityMatrix::diagonal({0.6, 0.4});
  MixedUnitaryChannel ch = synthesize_channel(rho, sigma);
  REQUIRE(ch.terms().size() == 2);
  CHECK(trace_norm_distance(apply_channel(ch, rho), sigma) < 1e-10);

  MixedUnitaryChannel self = synthesize_channel(rho, rho);
  REQUIRE(self.terms().size() == 1);
  CHECK(trace_norm_distance(apply_channel(self, rho), rho) < 1e-10);

  CHECK_THROWS_AS(synthesize_channel(DensityMatrix::maximally_mixed(2), rho),
                  std::invalid_argument);
  CHECK_THROWS_AS(synthesize_channel(rho, DensityMatrix::maximally_mixed(3)),
                  std::invalid_argument);
}

TEST_CASE("synthesis fuzz with a-posteriori verification") {
  Rng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    int dim = 2 + static_cast<int>(rng.next_below(7));
    Spectrum q = random_spectrum(dim, rng);
    Spectrum p = sharpen(q, rng.next_double());
    ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix v = random_unitary(dim, rng);
    ComplexMatrix pd = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix qd = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
      pd(i, i) = p.probs()[static_cast<std::size_t>(i)];
      qd(i, i) = q.probs()[static_cast<std::size_t>(i)];
    }
    DensityMatrix rho((u * pd * u.adjoint()).eval());
    DensityMatrix sigma((v * qd * v.adjoint()).eval());
    REQUIRE(can_convert(rho, sigma));
    MixedUnitaryChannel ch = synthesize_channel(rho, sigma);
    REQUIRE(trace_norm_distance(apply_channel(ch, rho), sigma) <= 1e-8);
    // Schur concavity: conversion can only lose coherence
    REQUIRE(total_coherence(rho) >= total_coherence(sigma) - 1e-9);
  }
}

TEST_CASE("pure to arbitrary synthesis") {
  Rng rng(17);
  DensityMatrix rho = random_pure(4, rng);
  DensityMatrix sigma = random_density(4, 4, rng);
  MixedUnitaryChannel ch = synthesize_channel(rho, sigma);
  CHECK(trace_norm_distance(apply_channel(ch, rho), sigma) <= 1e-8);
}
