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
#include <string_view>
#include <vector>

#include "qlrhv/types.hpp"

namespace qlrhv {

/// A per-spin measurement axis: a spatial unit vector, or the zero
/// direction meaning the spin does not take part in the correlator.
class Axis {
 public:
  static constexpr double kNormTolerance = 1e-12;

  static Axis zero() { return Axis(); }
  /// Requires |direction| = 1 within kNormTolerance.
  static Axis along(const Vec3& direction);
  /// Normalizes a non-zero vector.
  static Axis toward(const Vec3& v);

  bool is_zero() const noexcept { return zero_; }
  const Vec3& direction() const noexcept { return direction_; }

  /// a . m where m = n + e0: a . n for spatial axes, 1 for the zero axis.
  double dot_m(const Vec3& n) const noexcept { return zero_ ? 1.0 : direction_.dot(n); }

  /// "x", "-z", "0", or "[ax,ay,az]".
  std::string label() const;

  friend bool operator==(const Axis& a, const Axis& b) {
    return a.zero_ == b.zero_ && (a.zero_ || a.direction_ == b.direction_);
  }

 private:
  Axis() = default;
  explicit Axis(const Vec3& d) : zero_(false), direction_(d) {}

  bool zero_ = true;
  Vec3 direction_ = Vec3::Zero();
};

/// Parses "x", "y", "z", "-x", "-y", "-z", "0" (or "zero"), or "[ax,ay,az]".
Axis parse_axis(std::string_view token);

/// One axis per qubit; qubit 0 first.
struct MeasurementSpec {
  std::vector<Axis> axes;

  std::size_t size() const noexcept { return axes.size(); }
  bool all_zero() const;
  /// Space-separated axis labels, e.g. "x 0 z".
  std::string label() const;
};

/// Whitespace-separated axis tokens.
MeasurementSpec parse_spec(std::string_view text);

/// Every spec in `choices`^N, qubit 0 varying slowest.
std::vector<MeasurementSpec> all_specs(std::size_t num_qubits, const std::vector<Axis>& choices);

/// {x, y, z, 0}.
std::vector<Axis> pauli_axes();

}  // namespace qlrhv
