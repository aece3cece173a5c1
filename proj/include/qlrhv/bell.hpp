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

#include <array>
#include <cstddef>
#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "qlrhv/lrhv.hpp"
#include "qlrhv/oracle.hpp"
#include "qlrhv/quasi.hpp"

namespace qlrhv {

inline constexpr double kChshBound = 2.0;
inline constexpr double kLeggettGargBound = 1.0;

/// Axes a, a' for qubit r and b, b' for qubit s.
struct ChshSetting {
  std::size_t qubit_r = 0;
  std::size_t qubit_s = 1;
  Vec3 a = Vec3::UnitZ();
  Vec3 a_prime = Vec3::UnitX();
  Vec3 b = Vec3::UnitZ();
  Vec3 b_prime = Vec3::UnitX();
};

/// Two-spin correlator C(a, b) for the setting's qubit pair.
using PairCorrelator = std::function<double(const Vec3& a, const Vec3& b)>;

/// S = C(a,b) + C(a,b') + C(a',b) - C(a',b').
double chsh_value(const PairCorrelator& correlator, const ChshSetting& setting);

/// Correlators C(a, b) with zero axes on all other qubits.
PairCorrelator oracle_correlator(const DensityOperator& rho, std::size_t r, std::size_t s);
PairCorrelator quasi_correlator(const QuasiState& w, std::size_t r, std::size_t s);
PairCorrelator lrhv_correlator(const Ensemble& e, std::size_t r, std::size_t s);

enum class ScanPlane { xz, sphere };

struct ChshScan {
  double max_abs_s = 0.0;
  double s = 0.0;  ///< signed value at the maximizer
  ChshSetting argmax;
  double std_error = 0.0;  ///< of S at the maximizer; 0 for exact correlators
};

/// Maximizes |S| over a product grid of axes. In the x-z plane the grid is
/// `resolution` equally spaced angles on [0, 2pi); on the sphere it is
/// resolution polar x resolution azimuthal angles. Requires resolution >= 8.
ChshScan scan_max_chsh(const PairCorrelator& correlator, std::size_t r, std::size_t s, std::size_t resolution,
                       ScanPlane plane = ScanPlane::xz);

/// Same scan over LRHV correlators, using packed outcome bits, with the
/// standard error of S at the maximizer from per-molecule S values.
ChshScan scan_max_chsh(const Ensemble& e, std::size_t r, std::size_t s, std::size_t resolution,
                       ScanPlane plane = ScanPlane::xz);

/// Per-molecule CHSH estimate at a fixed setting.
CorrelationEstimate chsh_estimate(const Ensemble& e, const ChshSetting& setting);

/// Three snapshot indices into a trajectory, one spin, one axis.
struct TemporalSetting {
  std::array<std::size_t, 3> times{0, 1, 2};
  std::size_t qubit = 0;
  Axis axis = Axis::zero();
};

struct LeggettGarg {
  double k3 = 0.0;
  double std_error = 0.0;
};

/// K3 = C(t1,t2) + C(t2,t3) - C(t1,t3) from logged per-molecule outcomes.
/// Throws BadTrajectory when the probe or a snapshot is missing.
LeggettGarg leggett_garg(const Trajectory& trajectory, const TemporalSetting& setting);

/// {setting, S or K3, std_error, bound, violated}. Violation means the value
/// exceeds the bound by more than `sigmas` standard errors.
nlohmann::ordered_json bell_report(const ChshScan& scan, double sigmas = 5.0);
nlohmann::ordered_json bell_report(const TemporalSetting& setting, const LeggettGarg& result, double sigmas = 5.0);

}  // namespace qlrhv
