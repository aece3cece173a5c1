// Copyright 2026 The qlrhv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "qlrhv/circuit.hpp"
#include "qlrhv/error.hpp"
#include "qlrhv/oracle.hpp"

namespace qlrhv {
namespace {

namespace ot = oracle_test;

TEST(Gates, LibraryIsUnitary) {
  for (const std::string name : {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CX", "CZ", "SWAP"}) {
    EXPECT_TRUE(is_unitary(gates::named(name))) << name;
  }
  for (const std::string name : {"RX", "RY", "RZ", "CPHASE"}) {
    EXPECT_TRUE(is_unitary(gates::named(name, {0.37}))) << name;
    EXPECT_THROW(gates::named(name), ShapeError);
  }
  EXPECT_THROW(gates::named("FOO"), ShapeError);
  EXPECT_EQ(gates::arity("CNOT"), 2u);
  EXPECT_EQ(gates::arity("RZ"), 1u);
  EXPECT_EQ(gates::arity("FOO"), 0u);
}

TEST(Gates, RotationConventions) {
  EXPECT_LE(ot::max_abs(gates::rz(0.0) - ComplexMatrix::Identity(2, 2)), 1e-15);
  // Rotation by pi about x is X up to a global phase -i.
  EXPECT_LE(ot::max_abs(gates::rx(M_PI) - Complex(0, -1) * gates::x()), 1e-15);
  EXPECT_LE(ot::max_abs(gates::rotation(Vec3::UnitY(), 0.9) - gates::ry(0.9)), 1e-15);
}

TEST(Circuit, Validation) {
  Circuit c(2);
  EXPECT_THROW(c.add("CNOT", {0, 0}), BadTargets);
  EXPECT_THROW(c.add("H", {2}), BadTargets);
  EXPECT_THROW(c.add("H", {0, 1}), ShapeError);
  EXPECT_THROW(c.add("raw", ComplexMatrix::Identity(2, 2) * 1.1, {0}), BadUnitary);
  c.add("RZ", {1}, {0.0});
  EXPECT_EQ(c.size(), 1u);
}

TEST(DensityOperator, Validation) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  EXPECT_THROW(DensityOperator(m, 1), BadDensityOperator);
  m(0, 1) = 0.1;
  m /= 2.0;
  EXPECT_THROW(DensityOperator(m, 1), BadDensityOperator);
  EXPECT_THROW(DensityOperator(ComplexMatrix::Identity(2, 2) / 2.0, 2), ShapeError);
  EXPECT_THROW(DensityOperator::maximally_mixed(11), ShapeError);
}

TEST(Pseudopure, Limits) {
  const DensityOperator rho1 = DensityOperator::basis(1, 0);
  EXPECT_LE(ot::max_abs(pseudopure_state(rho1, 0.0).matrix() - DensityOperator::maximally_mixed(1).matrix()), 0.0);
  EXPECT_LE(ot::max_abs(pseudopure_state(rho1, 1.0).matrix() - rho1.matrix()), 0.0);
  const ComplexMatrix m = pseudopure_state(rho1, 1.0 / 3.0).matrix();
  EXPECT_NEAR(m(0, 0).real(), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(m(1, 1).real(), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(m(0, 1), Complex(0.0));
  EXPECT_THROW(pseudopure_state(rho1, -0.1), BadEpsilon);
  EXPECT_THROW(pseudopure_state(rho1, 1.1), BadEpsilon);
}

TEST(Evolve, MaximallyMixedUnchanged) {
  Circuit c(3);
  c.add("H", {0}).add("CNOT", {0, 1}).add("RX", {2}, {0.3}).add("SWAP", {2, 0});
  const DensityOperator out = evolve(DensityOperator::maximally_mixed(3), c);
  EXPECT_LE(ot::max_abs(out.matrix() - DensityOperator::maximally_mixed(3).matrix()), 1e-12);
}

TEST(Evolve, BitFlip) {
  Circuit c(2);
  c.add("X", {0});
  const DensityOperator out = evolve(DensityOperator::basis(2, 0), c);
  EXPECT_LE(ot::max_abs(out.matrix() - DensityOperator::basis(2, 2).matrix()), 0.0);
}

TEST(Evolve, BellPreparationSpectrum) {
  const double eps = 0.2;
  Circuit c(2);
  c.add("H", {0}).add("CNOT", {0, 1});
  const DensityOperator out = evolve(pseudopure_state(DensityOperator::basis(2, 0), eps), c);
  const Eigen::VectorXd ev = out.eigenvalues();
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev(i), (1 - eps) / 4, 1e-12);
  EXPECT_NEAR(ev(3), (1 + 3 * eps) / 4, 1e-12);
}

TEST(Evolve, MatchesFullEmbedding) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
      const std::size_t arity = 1 + trial % 3;
      if (arity > n) continue;
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const std::vector<std::size_t> targets(order.begin(), order.begin() + static_cast<long>(arity));
      const ComplexMatrix u = random_unitary(arity, trial + 17 * n);
      const DensityOperator rho = random_state(n, 3, trial + 31 * n);
      const ComplexMatrix full = ot::embed(u, targets, n);
      const DensityOperator out = apply_unitary(rho, u, targets);
      EXPECT_LE(ot::max_abs(out.matrix() - full * rho.matrix() * full.adjoint()), 1e-12);
      EXPECT_NEAR(out.purity(), rho.purity(), 1e-10);
      EXPECT_GE(out.spectrum_floor(), -1e-10);
    }
  }
}

TEST(Evolve, WidthMismatch) {
  Circuit c(3);
  EXPECT_THROW(evolve(DensityOperator::maximally_mixed(2), c), ShapeError);
}

TEST(CorrelationTrace, BasicValues) {
  const DensityOperator rho = random_state(3, 2, 8);
  EXPECT_NEAR(correlation_trace(rho, parse_spec("0 0 0")), 1.0, 1e-14);
  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  const DensityOperator singlet = DensityOperator::pure(psi);
  EXPECT_NEAR(correlation_trace(pseudopure_state(singlet, 0.25), parse_spec("z z")), -0.25, 1e-14);
}

TEST(CorrelationTrace, LinearInEpsilon) {
  std::mt19937_64 rng(4);
  const DensityOperator rho1 = random_state(3, 1, 2);
  const DensityOperator rho = pseudopure_state(rho1, 1.0 / 9.0);
  for (int t = 0; t < 100; ++t) {
    MeasurementSpec spec = ot::random_spec(3, rng);
    if (spec.all_zero()) spec.axes[0] = Axis::along(Vec3::UnitX());
    EXPECT_NEAR(correlation_trace(rho, spec), correlation_trace(rho1, spec) / 9.0, 1e-14);
    EXPECT_NEAR(correlation_trace(rho1, spec), ot::correlation(rho1.matrix(), spec), 1e-12);
  }
}

TEST(RandomGenerators, Properties) {
  const DensityOperator pure = random_state(2, 1, 5);
  const Eigen::VectorXd ev = pure.eigenvalues();
  EXPECT_NEAR(ev(3), 1.0, 1e-10);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ev(i), 0.0, 1e-10);
  EXPECT_EQ(random_state(2, 3, 9).matrix(), random_state(2, 3, 9).matrix());
  EXPECT_NE(random_state(2, 3, 9).matrix(), random_state(2, 3, 10).matrix());
  const ComplexMatrix u = random_unitary(1, 6);
  EXPECT_LE(ot::max_abs(u.adjoint() * u - ComplexMatrix::Identity(2, 2)), 1e-12);
  EXPECT_EQ(random_unitary(3, 6), random_unitary(3, 6));
  EXPECT_NEAR(random_state_vector(3, 1).norm(), 1.0, 1e-14);
}

// The first column of a Haar unitary is uniform on the sphere, so its
// Bloch vector averages to zero and |U_00|^2 averages to 1/2.
TEST(RandomGenerators, UnitaryFirstMoment) {
  double sum = 0.0;
  const int count = 4000;
  for (int s = 0; s < count; ++s) sum += std::norm(random_unitary(1, 1000 + s)(0, 0));
  const double mean = sum / count;
  // Var |U_00|^2 = 1/12 for a uniform point on the Bloch sphere.
  EXPECT_NEAR(mean, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / count));
}

}  // namespace
}  // namespace qlrhv
