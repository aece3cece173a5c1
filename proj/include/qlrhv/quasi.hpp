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
#include <filesystem>
#include <span>
#include <vector>

#include "qlrhv/circuit.hpp"
#include "qlrhv/frames.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/oracle.hpp"
#include "qlrhv/types.hpp"

namespace qlrhv {

/// Direction tuple digits (one frame index per qubit, qubit 0 first) to the
/// radix-frame_size code, and back.
std::size_t tuple_index(std::span<const std::size_t> digits, std::size_t frame_size);
std::vector<std::size_t> tuple_digits(std::size_t index, std::size_t num_qubits, std::size_t frame_size);

/**
 * A real weight vector over direction tuples: the quasidistribution of a
 * density operator, or any vector in the same space (the LRHV hidden
 * vector). Dense, in radix-frame-size order, qubit 0 most significant.
 */
class QuasiState {
 public:
  static constexpr std::size_t kMaxQubits = 12;

  QuasiState(Frame frame, std::size_t num_qubits, std::vector<double> weights);

  /// Every weight 1/frame_size^N: the maximally mixed state.
  static QuasiState uniform(Frame frame, std::size_t num_qubits);

  const Frame& frame() const noexcept { return frame_; }
  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return weights_.size(); }
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> weights() noexcept { return weights_; }
  double operator[](std::size_t i) const { return weights_[i]; }
  double& operator[](std::size_t i) { return weights_[i]; }

  double total() const;
  double min_weight() const;
  std::size_t argmin() const;

 private:
  Frame frame_;
  std::size_t num_qubits_;
  std::vector<double> weights_;
};

/// Propagator of quasi weights under a k-qubit unitary; may have negative entries.
struct TransitionMatrix {
  RealMatrix entries;                ///< frame_size^k square, entries(out, in)
  std::vector<std::size_t> targets;  ///< first target is the most significant digit
  ComplexMatrix source_unitary;
  std::size_t frame_size = 0;

  std::size_t arity() const noexcept { return targets.size(); }
  /// Largest |sum_out entries(out, in) - 1|.
  double column_sum_error() const;
};

/// (1/F^N) (x)_r (1 + 3 n_r . sigma) for the tuple `digits`. Throws BadDirectionIndex.
ComplexMatrix q_operator(const Frame& frame, std::span<const std::size_t> digits);

/// w(n) = tr(rho Q(n)), via the Pauli expansion of rho.
QuasiState quasi_from_density(const DensityOperator& rho, const Frame& frame);

/// sum_n w(n) |n><n|. Exact for the canonical w and for any vector that differs
/// from it by the kernel of the reconstruction map.
DensityOperator density_from_quasi(const QuasiState& w);

/// sum_n w(n) prod_r (a_r . m_r).
double correlation_quasi(const QuasiState& w, const MeasurementSpec& spec);

/// T(n', n) = <n| U^dagger Q(n') U |n> over tuples of the targets. Throws BadUnitary.
TransitionMatrix transition_matrix(const ComplexMatrix& u, const Frame& frame, std::vector<std::size_t> targets);
/// Targets 0..k-1.
TransitionMatrix transition_matrix(const ComplexMatrix& u, const Frame& frame);

/// Contracts T against the target digits only. Throws BadTargets, ShapeError.
QuasiState apply_gate(const QuasiState& w, const TransitionMatrix& t);
void apply_gate_in_place(QuasiState& w, const TransitionMatrix& t);

/// Every gate of the circuit, gate-locally.
QuasiState evolve(const QuasiState& w, const Circuit& circuit);

/// Applies the identity transition matrix to every qubit. Maps any
/// reconstruction-equivalent vector to the canonical quasidistribution of the
/// same operator; a no-op for the tetrahedron.
QuasiState canonicalize(const QuasiState& w);

/// Weights of a tensor product; the digits of `a` lead.
QuasiState quasi_product(const QuasiState& a, const QuasiState& b);

/// (1 - eps) * uniform + eps * w1, componentwise. Throws BadEpsilon.
QuasiState mix_with_uniform(const QuasiState& w1, double epsilon);

/// An operator coefficient * (x)_r factors[r] with 2x2 factors.
struct ProductTerm {
  Complex coefficient;
  std::vector<ComplexMatrix> factors;
};

/// Real part of sum_t tr(X_t Q(n)) for X = sum of product terms. Works past
/// the dense-operator qubit limit, e.g. for GHZ states at N = 12.
QuasiState quasi_from_product_terms(const std::vector<ProductTerm>& terms, const Frame& frame,
                                    std::size_t num_qubits);

/// -2^(2N-1) / F^N, the smallest eigenvalue of any Q(n).
double min_quasi_bound(std::size_t num_qubits, std::size_t frame_size);

/// Coefficients c_mu = tr(rho sigma_mu) over the 4^N Pauli strings, qubit 0 most significant.
std::vector<double> pauli_coefficients(const DensityOperator& rho);
DensityOperator density_from_pauli(std::span<const double> coefficients, std::size_t num_qubits);

/// Flat binary weight file: "QLRW", u32 version, u32 N, u32 frame size,
/// u32 label length, label bytes, then frame_size^N little-endian doubles.
inline constexpr std::uint32_t kWeightFileVersion = 1;
void write_weights(const std::filesystem::path& path, const QuasiState& w);
/// Built-in frames are restored from the label; custom frames must be passed in.
QuasiState read_weights(const std::filesystem::path& path);
QuasiState read_weights(const std::filesystem::path& path, const Frame& frame);

}  // namespace qlrhv
