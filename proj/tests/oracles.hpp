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

// Brute-force reference computations used only by tests. They build full
// Kronecker-product operators and never touch the library's Pauli-transform
// or strided-contraction paths.
#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "qlrhv/frames.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/types.hpp"

namespace qlrhv::oracle_test {

inline ComplexMatrix sigma_dot(const Vec3& n) {
  ComplexMatrix m(2, 2);
  m << n.z(), Complex(n.x(), -n.y()), Complex(n.x(), n.y()), -n.z();
  return m;
}

inline ComplexMatrix kron2(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

inline std::vector<std::size_t> digits_of(std::size_t code, std::size_t n, std::size_t f) {
  std::vector<std::size_t> d(n);
  for (std::size_t r = n; r-- > 0;) {
    d[r] = code % f;
    code /= f;
  }
  return d;
}

inline std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

/// (1/F^N) (x)(1 + 3 n.sigma)
inline ComplexMatrix q_op(const Frame& frame, const std::vector<std::size_t>& digits) {
  ComplexMatrix q = ComplexMatrix::Identity(1, 1);
  const double f = static_cast<double>(frame.size());
  for (std::size_t d : digits) {
    q = kron2(q, (ComplexMatrix::Identity(2, 2) + 3.0 * sigma_dot(frame[d])) / f);
  }
  return q;
}

/// (x)_r (1 + n_r.sigma)/2
inline ComplexMatrix product_projector(const Frame& frame, const std::vector<std::size_t>& digits) {
  ComplexMatrix p = ComplexMatrix::Identity(1, 1);
  for (std::size_t d : digits) p = kron2(p, (ComplexMatrix::Identity(2, 2) + sigma_dot(frame[d])) / 2.0);
  return p;
}

inline std::vector<double> quasi(const ComplexMatrix& rho, const Frame& frame, std::size_t n) {
  const std::size_t count = power(frame.size(), n);
  std::vector<double> w(count);
  for (std::size_t c = 0; c < count; ++c) w[c] = (rho * q_op(frame, digits_of(c, n, frame.size()))).trace().real();
  return w;
}

inline ComplexMatrix reconstruct(const std::vector<double>& w, const Frame& frame, std::size_t n) {
  const auto dim = static_cast<Eigen::Index>(power(2, n));
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t c = 0; c < w.size(); ++c) rho += w[c] * product_projector(frame, digits_of(c, n, frame.size()));
  return rho;
}

inline double correlation(const ComplexMatrix& rho, const MeasurementSpec& spec) {
  ComplexMatrix op = ComplexMatrix::Identity(1, 1);
  for (const Axis& a : spec.axes) {
    op = kron2(op, a.is_zero() ? ComplexMatrix(ComplexMatrix::Identity(2, 2)) : sigma_dot(a.direction()));
  }
  return (rho * op).trace().real();
}

/// Full 2^N unitary of a gate on `targets` (first target = most significant gate bit).
inline ComplexMatrix embed(const ComplexMatrix& u, const std::vector<std::size_t>& targets, std::size_t n) {
  const std::size_t dim = power(2, n);
  const std::size_t k = targets.size();
  auto sub = [&](std::size_t idx) {
    std::size_t s = 0;
    for (std::size_t t = 0; t < k; ++t) s = 2 * s + ((idx >> (n - 1 - targets[t])) & 1U);
    return s;
  };
  std::size_t mask = 0;
  for (std::size_t t : targets) mask |= std::size_t{1} << (n - 1 - t);
  ComplexMatrix full = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if ((i & ~mask) == (j & ~mask)) full(i, j) = u(sub(i), sub(j));
  return full;
}

/// T(n', n) = <n| U^dagger Q(n') U |n> with explicit product states.
inline RealMatrix transition(const ComplexMatrix& u, const Frame& frame, std::size_t k) {
  const std::size_t count = power(frame.size(), k);
  RealMatrix t(count, count);
  for (std::size_t col = 0; col < count; ++col) {
    const ComplexMatrix evolved = u * product_projector(frame, digits_of(col, k, frame.size())) * u.adjoint();
    for (std::size_t row = 0; row < count; ++row) {
      t(row, col) = (evolved * q_op(frame, digits_of(row, k, frame.size()))).trace().real();
    }
  }
  return t;
}

inline MeasurementSpec random_spec(std::size_t n, std::mt19937_64& rng, double zero_probability = 0.3) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  MeasurementSpec spec;
  for (std::size_t r = 0; r < n; ++r) {
    if (unit(rng) < zero_probability) {
      spec.axes.push_back(Axis::zero());
    } else {
      spec.axes.push_back(Axis::toward(Vec3(normal(rng), normal(rng), normal(rng))));
    }
  }
  return spec;
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix3d g;
  for (int i = 0; i < 9; ++i) g(i / 3, i % 3) = normal(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(g);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace qlrhv::oracle_test
