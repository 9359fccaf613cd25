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

#include <cmath>
#include <complex>

#include "totalcoh/correlation.hpp"
#include "totalcoh/random.hpp"

using namespace totalcoh;
using Catch::Approx;

namespace {

DensityMatrix bell_state() {
  Eigen::VectorXcd v(4);
  v << 1.0, 0.0, 0.0, 1.0;
  return DensityMatrix::pure(v);
}

DensityMatrix ghz_state() {
  Eigen::VectorXcd v(8);
  v.setZero();
  v(0) = 1.0;
  v(7) = 1.0;
  return DensityMatrix::pure(v);
}

DensityMatrix werner(double p) {
  ComplexMatrix m = p * bell_state().matrix() +
                    (1.0 - p) * DensityMatrix::maximally_mixed(4).matrix();
  return DensityMatrix(std::move(m));
}

constexpr double kCr7525 = 0.18872187554086717;  // 1 - H2(0.25), hand-evaluated

}  // namespace

TEST_CASE("mutual information reference points") {
  Rng rng(31);
  BipartiteState prod = random_product(2, 3, rng);
  CHECK(mutual_information(prod) == Approx(0.0).margin(1e-9));
  CHECK(mutual_information(BipartiteState(2, 2, bell_state())) == Approx(2.0).margin(1e-9));
}

TEST_CASE("uniform diagonal rotation flattens every diagonal") {
  DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  ComplexMatrix u = uniform_diagonal_rotation(rho);
  REQUIRE(is_unitary(u, 1e-10));
  ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
  CHECK(std::abs(rotated(0, 0) - std::complex<double>(0.5, 0.0)) < 1e-10);
  CHECK(std::abs(rotated(1, 1) - std::complex<double>(0.5, 0.0)) < 1e-10);

  ComplexMatrix u2 = uniform_diagonal_rotation(DensityMatrix::maximally_mixed(4));
  REQUIRE(is_unitary(u2, 1e-10));

  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    DensityMatrix q = random_density(3, 1 + static_cast<int>(rng.next_below(3)), rng);
    ComplexMatrix r = uniform_diagonal_rotation(q);
    ComplexMatrix out = r * q.matrix() * r.adjoint();
    for (int i = 0; i < 3; ++i) {
      REQUIRE(std::abs(out(i, i) - std::complex<double>(1.0 / 3.0, 0.0)) < 1e-10);
    }
    // a unitary rotation: the spectrum is untouched
    DensityMatrix outd((0.5 * (out + out.adjoint())).eval());
    REQUIRE(von_neumann_entropy(outd) == Approx(von_neumann_entropy(q)).margin(1e-9));
  }
}

TEST_CASE("generalized CNOT structure") {
  ComplexMatrix u = generalized_cnot(2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;  // |00> -> |00>
  expected(1, 1) = 1.0;  // |01> -> |01>
  expected(3, 2) = 1.0;  // |10> -> |11>
  expected(2, 3) = 1.0;  // |11> -> |10>
  CHECK((u - expected).cwiseAbs().maxCoeff() < 1e-15);

  ComplexMatrix ident = generalized_cnot(5, 1);
  CHECK((ident - ComplexMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-15);

  ComplexMatrix u23 = generalized_cnot(2, 3);
  CHECK((u23.adjoint() * u23 - ComplexMatrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  // every column is a basis vector
  for (int c = 0; c < 6; ++c) {
    CHECK(u23.col(c).cwiseAbs().sum() == Approx(1.0));
  }
}

TEST_CASE("coherence converts to correlation at m = n") {
  Rng rng(33);
  DensityMatrix pure = random_pure(2, rng);
  ConversionReport rep = coherence_to_correlation(pure, 2);
  CHECK(rep.saturation_expected);
  CHECK(rep.input_coherence == Approx(1.0).margin(1e-9));
  CHECK(rep.output_mutual_information == Approx(1.0).margin(1e-9));
  CHECK(std::abs(rep.equality_slack) <= 1e-9);
  CHECK(trace_norm_distance(rep.reduced_s, DensityMatrix::maximally_mixed(2)) < 1e-10);
  CHECK(trace_norm_distance(rep.reduced_a, DensityMatrix::maximally_mixed(2)) < 1e-10);
  REQUIRE(is_unitary(rep.unitary_used, 1e-9));

  ConversionReport flat = coherence_to_correlation(DensityMatrix::maximally_mixed(3), 4);
  CHECK(flat.output_mutual_information == Approx(0.0).margin(1e-9));
  CHECK(flat.input_coherence == Approx(0.0).margin(1e-12));

  ConversionReport diag = coherence_to_correlation(DensityMatrix::diagonal({0.75, 0.25}), 2);
  CHECK(diag.output_mutual_information == Approx(kCr7525).margin(1e-9));
  CHECK(diag.equality_slack <= 1e-9);
}

TEST_CASE("protocol output matches a hand-built 4x4 construction") {
  // Hadamard is the 2-point Fourier matrix; conjugating diag(0.75, 0.25)
  // gives [[0.5, 0.25], [0.25, 0.5]], and the CNOT correlates the ancilla.
  ComplexMatrix rho_tilde(2, 2);
  rho_tilde << 0.5, 0.25, 0.25, 0.5;
  DensityMatrix joint = tensor(DensityMatrix(rho_tilde), DensityMatrix::maximally_mixed(2));
  ComplexMatrix cnot = generalized_cnot(2, 2);
  DensityMatrix out((cnot * joint.matrix() * cnot.adjoint()).eval());
  double info = mutual_information(BipartiteState(2, 2, out));
  CHECK(info == Approx(kCr7525).margin(1e-12));
}

TEST_CASE("saturation holds across sampled states with m = n") {
  Rng rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    int rank = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    DensityMatrix rho = random_density(n, rank, rng);
    ConversionReport rep = coherence_to_correlation(rho, n);
    REQUIRE(rep.saturation_expected);
    REQUIRE(std::abs(rep.equality_slack) <= 1e-9);
    REQUIRE(trace_norm_distance(rep.reduced_s, DensityMatrix::maximally_mixed(n)) < 1e-10);
    REQUIRE(trace_norm_distance(rep.reduced_a, DensityMatrix::maximally_mixed(n)) < 1e-10);
  }
}

TEST_CASE("small ancilla is flagged, never asserted") {
  Rng rng(35);
  DensityMatrix rho = random_density(3, 2, rng);
  ConversionReport rep = coherence_to_correlation(rho, 2);
  CHECK_FALSE(rep.saturation_expected);
  // the bound still holds even though equality is off the table
  CHECK(rep.equality_slack >= -1e-9);
  // the ancilla marginal is maximally mixed for every m
  CHECK(trace_norm_distance(rep.reduced_a, DensityMatrix::maximally_mixed(2)) < 1e-10);
}

TEST_CASE("correlation bound slack") {
  DensityMatrix rho = DensityMatrix::diagonal({0.75, 0.25});
  ComplexMatrix eye = ComplexMatrix::Identity(4, 4);
  MixedUnitaryChannel ident({{1.0, eye}});
  CHECK(correlation_bound_slack(rho, 2, ident) == Approx(kCr7525).margin(1e-9));

  ConversionReport rep = coherence_to_correlation(rho, 2);
  MixedUnitaryChannel protocol({{1.0, rep.unitary_used}});
  CHECK(correlation_bound_slack(rho, 2, protocol) <= 1e-9);

  CHECK_THROWS_AS(correlation_bound_slack(rho, 3, ident), std::invalid_argument);

  Rng rng(36);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng.next_below(3));
    int m = 2 + static_cast<int>(rng.next_below(3));
    DensityMatrix state = random_density(n, 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))), rng);
    MixedUnitaryChannel ch = random_mixed_unitary_channel(n * m, 1 + static_cast<int>(rng.next_below(3)), rng);
    REQUIRE(correlation_bound_slack(state, m, ch) >= -1e-9);
  }
}

TEST_CASE("residual coherence identity") {
  Rng rng(37);
  BipartiteState prod = random_product(2, 2, rng);
  auto [plhs, prhs] = residual_coherence_identity(prod);
  CHECK(plhs == Approx(0.0).margin(1e-9));
  CHECK(prhs == Approx(0.0).margin(1e-9));

  auto [blhs, brhs] = residual_coherence_identity(BipartiteState(2, 2, bell_state()));
  CHECK(blhs == Approx(2.0).margin(1e-9));
  CHECK(brhs == Approx(2.0).margin(1e-9));

  for (int trial = 0; trial < 200; ++trial) {
    DensityMatrix rho = random_density(12, 1 + static_cast<int>(rng.next_below(12)), rng);
    auto [lhs, rhs] = residual_coherence_identity(BipartiteState(3, 4, rho));
    REQUIRE(std::abs(lhs - rhs) <= 1e-9);
    // subadditivity corollary
    REQUIRE(rhs >= -1e-9);
  }
}

TEST_CASE("strong subadditivity slack") {
  Rng rng(38);
  DensityMatrix a = random_density(2, 2, rng);
  DensityMatrix b = random_density(2, 1, rng);
  DensityMatrix c = random_density(2, 2, rng);
  TripartiteState prod(2, 2, 2, tensor(tensor(a, b), c));
  CHECK(strong_subadditivity_slack(prod) == Approx(0.0).margin(1e-9));

  CHECK(strong_subadditivity_slack(TripartiteState(2, 2, 2, ghz_state())) >= -1e-9);

  for (int trial = 0; trial < 300; ++trial) {
    DensityMatrix rho = random_density(8, 1 + static_cast<int>(rng.next_below(8)), rng);
    REQUIRE(strong_subadditivity_slack(TripartiteState(2, 2, 2, rho)) >= -1e-9);
  }
  CHECK_THROWS_AS(TripartiteState(2, 2, 2, DensityMatrix::maximally_mixed(6)),
                  std::invalid_argument);
}

TEST_CASE("pure state entanglement equals the coherence gap") {
  Rng rng(39);
  DensityMatrix prod_pure = tensor(random_pure(2, rng), random_pure(3, rng));
  auto [e0, g0] = pure_entanglement_gap(BipartiteState(2, 3, prod_pure));
  CHECK(e0 == Approx(0.0).margin(1e-9));
  CHECK(g0 == Approx(0.0).margin(1e-9));

  auto [e1, g1] = pure_entanglement_gap(BipartiteState(2, 2, bell_state()));
  CHECK(e1 == Approx(1.0).margin(1e-9));
  CHECK(g1 == Approx(1.0).margin(1e-9));

  // Schmidt coefficients (0.8, 0.2): entanglement is H2(0.2), hand-evaluated
  Eigen::VectorXcd psi(4);
  psi << std::sqrt(0.8), 0.0, 0.0, std::sqrt(0.2);
  auto [e2, g2] = pure_entanglement_gap(BipartiteState(2, 2, DensityMatrix::pure(psi)));
  CHECK(e2 == Approx(0.7219280948873623).margin(1e-9));
  CHECK(g2 == Approx(0.7219280948873623).margin(1e-9));

  for (int trial = 0; trial < 200; ++trial) {
    int da = 2 + static_cast<int>(rng.next_below(3));
    int db = 2 + static_cast<int>(rng.next_below(3));
    BipartiteState psi_ab(da, db, random_pure(da * db, rng));
    auto [e, g] = pure_entanglement_gap(psi_ab);
    REQUIRE(std::abs(e - g) <= 1e-9);
  }

  CHECK_THROWS_AS(pure_entanglement_gap(BipartiteState(2, 2, werner(0.5))),
                  std::invalid_argument);
}

TEST_CASE("two-qubit entanglement of formation respects the bound") {
  Rng rng(40);
  BipartiteState prod = random_product(2, 2, rng);
  auto [ep, bp] = mixed_entanglement_bound_2x2(prod);
  CHECK(ep == Approx(0.0).margin(1e-9));
  CHECK(ep <= bp + 1e-9);

  auto [eb, bb] = mixed_entanglement_bound_2x2(BipartiteState(2, 2, bell_state()));
  CHECK(eb == Approx(1.0).margin(1e-9));
  CHECK(bb == Approx(1.0).margin(1e-9));

  // Werner state concurrence max(0, (3p-1)/2)
  CHECK(concurrence_2x2(werner(1.0)) == Approx(1.0).margin(1e-9));
  CHECK(concurrence_2x2(werner(0.6)) == Approx(0.4).margin(1e-9));
  CHECK(concurrence_2x2(werner(0.2)) == Approx(0.0).margin(1e-9));

  for (int trial = 0; trial < 300; ++trial) {
    DensityMatrix rho = random_density(4, 1 + static_cast<int>(rng.next_below(4)), rng);
    auto [eof, bound] = mixed_entanglement_bound_2x2(BipartiteState(2, 2, rho));
    REQUIRE(eof <= bound + 1e-9);
  }
  for (int trial = 0; trial < 50; ++trial) {
    auto [eof, bound] = mixed_entanglement_bound_2x2(BipartiteState(2, 2, werner(rng.next_double())));
    REQUIRE(eof <= bound + 1e-9);
  }

  CHECK_THROWS_AS(mixed_entanglement_bound_2x2(random_product(2, 3, rng)),
                  std::invalid_argument);
}
