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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qlrhv/circuit.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/types.hpp"

namespace qlrhv {

/**
 * Dense 2^N x 2^N density matrix. Qubit 0 is the most significant bit of
 * the basis index.
 *
 * Construction checks Hermiticity and unit trace to kTolerance. The
 * spectrum is only checked on request (spectrum_floor()), since it costs a
 * full eigendecomposition.
 */
class DensityOperator {
 public:
  static constexpr double kTolerance = 1e-10;
  static constexpr std::size_t kMaxQubits = 10;

  DensityOperator(ComplexMatrix matrix, std::size_t num_qubits);

  static DensityOperator maximally_mixed(std::size_t num_qubits);
  /// |psi><psi| for a normalized state vector.
  static DensityOperator pure(const ComplexVector& psi);
  /// |b><b| for computational basis index b.
  static DensityOperator basis(std::size_t num_qubits, std::size_t index);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;
  double spectrum_floor() const { return eigenvalues()(0); }
  double purity() const;

 private:
  ComplexMatrix matrix_;
  std::size_t num_qubits_;
};

/// (1 - eps) 1/2^N + eps rho1. Throws BadEpsilon outside [0, 1].
DensityOperator pseudopure_state(const DensityOperator& rho1, double epsilon);

/// U rho U^dagger for a gate on `targets`, by strided 2^k-block updates.
DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                              const std::vector<std::size_t>& targets);

/// Gate by gate. Throws ShapeError when the circuit width differs from rho.
DensityOperator evolve(const DensityOperator& rho, const Circuit& circuit);

/// tr(rho (x)_r sigma.a_r), identity factors for zero axes.
double correlation_trace(const DensityOperator& rho, const MeasurementSpec& spec);

/// Random density operator of the given rank from a complex Gaussian
/// 2^N x rank matrix G: G G^dagger / tr(G G^dagger). Rank 1 gives a pure state.
DensityOperator random_state(std::size_t num_qubits, std::size_t rank, std::uint64_t seed);

/// Haar-distributed 2^k x 2^k unitary via QR of a complex Gaussian matrix
/// with the R-diagonal phases divided out.
ComplexMatrix random_unitary(std::size_t num_qubits, std::uint64_t seed);

/// Random normalized state vector on N qubits.
ComplexVector random_state_vector(std::size_t num_qubits, std::uint64_t seed);

/// Kronecker product a (x) b; a is the more significant factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The 2x2 operator sigma.a (identity for the zero axis).
ComplexMatrix axis_operator(const Axis& axis);

/// Single-qubit projector |n><n| = (1 + sigma.n) / 2.
ComplexMatrix bloch_projector(const Vec3& n);

}  // namespace qlrhv
