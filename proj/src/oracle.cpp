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

#include "qlrhv/oracle.hpp"

#include <cmath>
#include <random>

#include "qlrhv/error.hpp"

namespace qlrhv {

namespace {

std::size_t bit_of(std::size_t qubit, std::size_t num_qubits) { return std::size_t{1} << (num_qubits - 1 - qubit); }

// Applies u to every column of m on the target qubits, in place.
void apply_to_columns(ComplexMatrix& m, const ComplexMatrix& u, const std::vector<std::size_t>& targets,
                      std::size_t num_qubits) {
  const std::size_t k = targets.size();
  const std::size_t block = ipow(2, k);
  std::vector<std::size_t> offsets(block, 0);
  std::size_t mask = 0;
  for (std::size_t j = 0; j < block; ++j) {
    for (std::size_t t = 0; t < k; ++t) {
      if ((j >> (k - 1 - t)) & 1U) offsets[j] |= bit_of(targets[t], num_qubits);
    }
  }
  for (std::size_t t = 0; t < k; ++t) mask |= bit_of(targets[t], num_qubits);

  const auto dim = static_cast<std::size_t>(m.rows());
  std::vector<Complex> in(block), out(block);
  for (Eigen::Index col = 0; col < m.cols(); ++col) {
    Complex* column = m.col(col).data();
    for (std::size_t base = 0; base < dim; ++base) {
      if (base & mask) continue;
      for (std::size_t j = 0; j < block; ++j) in[j] = column[base + offsets[j]];
      for (std::size_t r = 0; r < block; ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < block; ++c) acc += u(r, c) * in[c];
        out[r] = acc;
      }
      for (std::size_t j = 0; j < block; ++j) column[base + offsets[j]] = out[j];
    }
  }
}

ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, std::size_t num_qubits)
    : matrix_(std::move(matrix)), num_qubits_(num_qubits) {
  if (num_qubits_ == 0 || num_qubits_ > kMaxQubits) {
    throw ShapeError("density operators support 1.." + std::to_string(kMaxQubits) + " qubits");
  }
  const auto dim = static_cast<Eigen::Index>(ipow(2, num_qubits_));
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw ShapeError("density matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > kTolerance) {
    throw BadDensityOperator("density matrix is not Hermitian");
  }
  const Complex trace = matrix_.trace();
  if (std::abs(trace - 1.0) > kTolerance) {
    throw BadDensityOperator("density matrix trace " + std::to_string(trace.real()) + " is not 1");
  }
}

DensityOperator DensityOperator::maximally_mixed(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(ipow(2, num_qubits));
  return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), num_qubits);
}

DensityOperator DensityOperator::pure(const ComplexVector& psi) {
  std::size_t n = 0;
  while (ipow(2, n) < static_cast<std::size_t>(psi.size())) ++n;
  if (ipow(2, n) != static_cast<std::size_t>(psi.size())) throw ShapeError("state vector length is not 2^N");
  return DensityOperator(psi * psi.adjoint(), n);
}

DensityOperator DensityOperator::basis(std::size_t num_qubits, std::size_t index) {
  const auto dim = static_cast<Eigen::Index>(ipow(2, num_qubits));
  if (static_cast<Eigen::Index>(index) >= dim) throw ShapeError("basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityOperator(std::move(m), num_qubits);
}

Eigen::VectorXd DensityOperator::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(matrix_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityOperator pseudopure_state(const DensityOperator& rho1, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw BadEpsilon("epsilon must lie in [0, 1]");
  const auto dim = static_cast<Eigen::Index>(rho1.dim());
  ComplexMatrix m = epsilon * rho1.matrix();
  m.diagonal().array() += (1.0 - epsilon) / static_cast<double>(dim);
  return DensityOperator(std::move(m), rho1.num_qubits());
}

DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u,
                              const std::vector<std::size_t>& targets) {
  check_targets(targets, rho.num_qubits());
  const auto block = static_cast<Eigen::Index>(ipow(2, targets.size()));
  if (u.rows() != block || u.cols() != block) throw ShapeError("gate size does not match target count");
  ComplexMatrix m = rho.matrix();
  apply_to_columns(m, u, targets, rho.num_qubits());
  ComplexMatrix half = m.adjoint();
  apply_to_columns(half, u, targets, rho.num_qubits());
  ComplexMatrix out = half.adjoint();
  // Rounding breaks exact Hermiticity; restore it so long circuits stay within tolerance.
  out = (out + out.adjoint().eval()) * 0.5;
  return DensityOperator(std::move(out), rho.num_qubits());
}

DensityOperator evolve(const DensityOperator& rho, const Circuit& circuit) {
  if (circuit.num_qubits() != rho.num_qubits()) {
    throw ShapeError("circuit acts on " + std::to_string(circuit.num_qubits()) + " qubits, state has " +
                     std::to_string(rho.num_qubits()));
  }
  DensityOperator out = rho;
  for (const Gate& g : circuit.gates()) out = apply_unitary(out, g.matrix, g.targets);
  return out;
}

ComplexMatrix axis_operator(const Axis& axis) {
  ComplexMatrix m(2, 2);
  if (axis.is_zero()) {
    m.setIdentity();
    return m;
  }
  const Vec3& a = axis.direction();
  m << a.z(), Complex(a.x(), -a.y()), Complex(a.x(), a.y()), -a.z();
  return m;
}

ComplexMatrix bloch_projector(const Vec3& n) {
  ComplexMatrix m(2, 2);
  m << 0.5 * (1.0 + n.z()), 0.5 * Complex(n.x(), -n.y()), 0.5 * Complex(n.x(), n.y()), 0.5 * (1.0 - n.z());
  return m;
}

double correlation_trace(const DensityOperator& rho, const MeasurementSpec& spec) {
  const std::size_t n = rho.num_qubits();
  if (spec.size() != n) throw ShapeError("measurement spec length does not match qubit count");
  std::vector<ComplexMatrix> ops;
  ops.reserve(n);
  for (const Axis& a : spec.axes) ops.push_back(axis_operator(a));

  // tr(rho O) = sum_ij rho_ij O_ji with O_ji = prod_r (O_r)[j_r, i_r].
  const ComplexMatrix& m = rho.matrix();
  const auto dim = static_cast<std::size_t>(m.rows());
  Complex total = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      Complex o = 1.0;
      for (std::size_t r = 0; r < n && o != 0.0; ++r) {
        const std::size_t shift = n - 1 - r;
        o *= ops[r]((j >> shift) & 1U, (i >> shift) & 1U);
      }
      if (o != 0.0) total += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) * o;
    }
  }
  return total.real();
}

DensityOperator random_state(std::size_t num_qubits, std::size_t rank, std::uint64_t seed) {
  const std::size_t dim = ipow(2, num_qubits);
  if (rank == 0 || rank > dim) throw ShapeError("rank must lie in [1, 2^N]");
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = gaussian_matrix(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(rank), rng);
  ComplexMatrix m = g * g.adjoint();
  m /= m.trace().real();
  m = (m + m.adjoint().eval()) * 0.5;
  return DensityOperator(std::move(m), num_qubits);
}

ComplexMatrix random_unitary(std::size_t num_qubits, std::uint64_t seed) {
  const auto dim = static_cast<Eigen::Index>(ipow(2, num_qubits));
  std::mt19937_64 rng(seed);
  const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

ComplexVector random_state_vector(std::size_t num_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ComplexVector v = gaussian_matrix(static_cast<Eigen::Index>(ipow(2, num_qubits)), 1, rng).col(0);
  return v / v.norm();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace qlrhv
