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
#include <string>
#include <vector>

#include "qlrhv/types.hpp"

namespace qlrhv {

inline constexpr double kUnitaryTolerance = 1e-10;

/// ||U^dagger U - 1||_max <= tol.
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTolerance);

namespace gates {

ComplexMatrix identity(std::size_t num_qubits);
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
ComplexMatrix h();
ComplexMatrix s();
ComplexMatrix t();
ComplexMatrix rx(double theta);
ComplexMatrix ry(double theta);
ComplexMatrix rz(double theta);
/// Rotation by `theta` about the unit axis `n`: exp(-i theta n.sigma / 2).
ComplexMatrix rotation(const Vec3& n, double theta);
/// First target is the control.
ComplexMatrix cnot();
ComplexMatrix cz();
ComplexMatrix cphase(double theta);
ComplexMatrix swap();

/// Library gate by upper-case name; `params` holds rotation angles.
ComplexMatrix named(const std::string& name, const std::vector<double>& params = {});
/// Number of qubits a library gate acts on; 0 for unknown names.
std::size_t arity(const std::string& name);

}  // namespace gates

/// A unitary on `targets`. The first target is the most significant bit of
/// the matrix index.
struct Gate {
  std::string name;
  ComplexMatrix matrix;
  std::vector<std::size_t> targets;

  std::size_t arity() const noexcept { return targets.size(); }
};

/// Throws BadTargets for duplicate or out-of-range targets.
void check_targets(const std::vector<std::size_t>& targets, std::size_t num_qubits);

class Circuit {
 public:
  static constexpr std::size_t kMaxGateQubits = 3;

  explicit Circuit(std::size_t num_qubits) : num_qubits_(num_qubits) {}

  /// Validates unitarity (BadUnitary), shape (ShapeError), and targets (BadTargets).
  Circuit& add(std::string name, ComplexMatrix matrix, std::vector<std::size_t> targets);
  /// Library gate, e.g. add("CNOT", {0, 1}) or add("RZ", {2}, {1.57}).
  Circuit& add(const std::string& name, std::vector<std::size_t> targets, std::vector<double> params = {});

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

 private:
  std::size_t num_qubits_;
  std::vector<Gate> gates_;
};

}  // namespace qlrhv
