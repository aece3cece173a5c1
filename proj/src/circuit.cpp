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

#include "qlrhv/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "qlrhv/error.hpp"

namespace qlrhv {

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) return false;
  const ComplexMatrix residual = u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols());
  return residual.cwiseAbs().maxCoeff() <= tol;
}

namespace gates {

namespace {

constexpr Complex kI{0.0, 1.0};

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix controlled(const ComplexMatrix& u) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m.bottomRightCorner(2, 2) = u;
  return m;
}

}  // namespace

ComplexMatrix identity(std::size_t num_qubits) {
  const auto dim = static_cast<Eigen::Index>(ipow(2, num_qubits));
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix x() { return mat2(0, 1, 1, 0); }
ComplexMatrix y() { return mat2(0, -kI, kI, 0); }
ComplexMatrix z() { return mat2(1, 0, 0, -1); }

ComplexMatrix h() {
  const double r = 1.0 / std::sqrt(2.0);
  return mat2(r, r, r, -r);
}

ComplexMatrix s() { return mat2(1, 0, 0, kI); }
ComplexMatrix t() { return mat2(1, 0, 0, std::polar(1.0, M_PI / 4.0)); }

ComplexMatrix rx(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return mat2(c, -kI * s, -kI * s, c);
}

ComplexMatrix ry(double theta) {
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return mat2(c, -s, s, c);
}

ComplexMatrix rz(double theta) { return mat2(std::polar(1.0, -theta / 2.0), 0, 0, std::polar(1.0, theta / 2.0)); }

ComplexMatrix rotation(const Vec3& n, double theta) {
  const Vec3 u = n.normalized();
  const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
  return mat2(Complex(c, -s * u.z()), Complex(-s * u.y(), -s * u.x()), Complex(s * u.y(), -s * u.x()),
              Complex(c, s * u.z()));
}

ComplexMatrix cnot() { return controlled(x()); }
ComplexMatrix cz() { return controlled(z()); }
ComplexMatrix cphase(double theta) { return controlled(mat2(1, 0, 0, std::polar(1.0, theta))); }

ComplexMatrix swap() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
  return m;
}

std::size_t arity(const std::string& name) {
  static const std::set<std::string> one{"I", "X", "Y", "Z", "H", "S", "T", "RX", "RY", "RZ"};
  static const std::set<std::string> two{"CNOT", "CX", "CZ", "CPHASE", "SWAP"};
  if (one.count(name)) return 1;
  if (two.count(name)) return 2;
  return 0;
}

ComplexMatrix named(const std::string& name, const std::vector<double>& params) {
  const bool rotation_gate = name == "RX" || name == "RY" || name == "RZ" || name == "CPHASE";
  if (rotation_gate != (params.size() == 1) || (!rotation_gate && !params.empty())) {
    throw ShapeError("gate " + name + (rotation_gate ? " takes one angle" : " takes no parameters"));
  }
  if (name == "I") return identity(1);
  if (name == "X") return x();
  if (name == "Y") return y();
  if (name == "Z") return z();
  if (name == "H") return h();
  if (name == "S") return s();
  if (name == "T") return t();
  if (name == "RX") return rx(params[0]);
  if (name == "RY") return ry(params[0]);
  if (name == "RZ") return rz(params[0]);
  if (name == "CNOT" || name == "CX") return cnot();
  if (name == "CZ") return cz();
  if (name == "CPHASE") return cphase(params[0]);
  if (name == "SWAP") return swap();
  throw ShapeError("unknown gate '" + name + "'");
}

}  // namespace gates

void check_targets(const std::vector<std::size_t>& targets, std::size_t num_qubits) {
  if (targets.empty()) throw BadTargets("gate has no targets");
  std::vector<std::size_t> sorted = targets;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw BadTargets("duplicate target qubit " + std::to_string(*std::adjacent_find(sorted.begin(), sorted.end())));
  }
  if (sorted.back() >= num_qubits) {
    throw BadTargets("target qubit " + std::to_string(sorted.back()) + " out of range for " +
                     std::to_string(num_qubits) + " qubits");
  }
}

Circuit& Circuit::add(std::string name, ComplexMatrix matrix, std::vector<std::size_t> targets) {
  check_targets(targets, num_qubits_);
  if (targets.size() > kMaxGateQubits) throw ShapeError("gates act on at most 3 qubits");
  const auto dim = static_cast<Eigen::Index>(ipow(2, targets.size()));
  if (matrix.rows() != dim || matrix.cols() != dim) {
    throw ShapeError("gate " + name + " matrix is not " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  if (!is_unitary(matrix)) throw BadUnitary("gate " + name + " is not unitary");
  gates_.push_back(Gate{std::move(name), std::move(matrix), std::move(targets)});
  return *this;
}

Circuit& Circuit::add(const std::string& name, std::vector<std::size_t> targets, std::vector<double> params) {
  return add(name, gates::named(name, params), std::move(targets));
}

}  // namespace qlrhv
