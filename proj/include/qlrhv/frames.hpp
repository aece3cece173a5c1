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
#include <string>
#include <vector>

#include "qlrhv/types.hpp"

namespace qlrhv {

enum class FrameKind { tetrahedron, cardinal6, custom };

/// Worst-case absolute residuals of the frame conditions.
struct ValidationReport {
  double max_residual_zero_sum = 0.0;  ///< max_j |sum_n n_j|
  double max_residual_isotropy = 0.0;  ///< max_jk |(1/N) sum_n n_j n_k - delta_jk / 3|
  double max_norm_error = 0.0;         ///< max_n | |n| - 1 |

  double worst() const;
};

/// Pairwise dot products n_i . n_j of a frame.
struct FrameGram {
  RealMatrix dot;

  /// Symmetric with unit diagonal.
  bool is_consistent(double tol = 1e-12) const;
};

/**
 * An ordered set of spatial unit vectors per spin whose components sum to
 * zero and whose second moments resolve one third of the 3x3 identity.
 *
 * Every qubit uses the same frame. Direction tuples over N qubits are indexed
 * as radix-size() integers with qubit 0 as the most significant digit.
 *
 * Immutable after construction.
 */
class Frame {
 public:
  static constexpr double kAcceptTolerance = 1e-10;
  static constexpr std::size_t kMaxSize = 65535;

  /// Vertices (1,1,1), (1,-1,-1), (-1,1,-1), (-1,-1,1), scaled by 1/sqrt(3).
  static Frame tetrahedron();
  /// +x, -x, +y, -y, +z, -z.
  static Frame cardinal6();
  /// Validates the conditions to kAcceptTolerance; throws FrameInvalid.
  static Frame custom(std::vector<Vec3> vectors, std::string label = "custom");

  std::size_t size() const noexcept { return vectors_.size(); }
  const Vec3& operator[](std::size_t i) const { return vectors_[i]; }
  std::span<const Vec3> vectors() const noexcept { return vectors_; }
  const std::string& label() const noexcept { return label_; }
  FrameKind kind() const noexcept { return kind_; }

  friend bool operator==(const Frame& a, const Frame& b);

 private:
  Frame(std::vector<Vec3> vectors, std::string label, FrameKind kind)
      : vectors_(std::move(vectors)), label_(std::move(label)), kind_(kind) {}

  std::vector<Vec3> vectors_;
  std::string label_;
  FrameKind kind_;
};

/// Builds a built-in frame, or a custom one from `vectors`.
Frame build_frame(FrameKind kind, std::span<const Vec3> vectors = {});

ValidationReport validate_frame(std::span<const Vec3> vectors);
ValidationReport validate_frame(const Frame& frame);

FrameGram frame_gram(const Frame& frame);

/// Looks up a built-in frame by label ("tetrahedron" or "cardinal6").
Frame builtin_frame(const std::string& label);

/// One vector per line, three whitespace-separated decimals; '#' starts a comment line.
Frame parse_frame(const std::string& text, std::string label = "custom");
Frame load_frame_file(const std::filesystem::path& path);

}  // namespace qlrhv
