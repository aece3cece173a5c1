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

#include "qlrhv/quasi.hpp"

namespace qlrhv {

/// Thermal polarization and spin count of an NMR sample.
struct NmrParams {
  double alpha = 2e-5;
  std::size_t num_qubits = 1;
};

enum class Regime { unentangleable, open_region, entangled_states_exist };

std::string to_string(Regime regime);

struct Thresholds {
  double epsilon = 0.0;
  double eta = 0.0;        ///< 1 / (1 + 2^(2N-1)); eps <= eta means nonnegative quasidistributions
  double eta_prime = 0.0;  ///< 1 / (1 + 2^(N-1)); entangled pseudopure states exist above it
  Regime regime = Regime::unentangleable;
};

/// alpha N / 2^N. Throws BadEpsilon unless 0 < alpha < 1.
double epsilon_pseudopure(const NmrParams& params);

double eta(std::size_t num_qubits);
double eta_prime(std::size_t num_qubits);

/// Throws BadEpsilon outside [0, 1].
Thresholds thresholds(double epsilon, std::size_t num_qubits);

/// Largest N <= max_qubits with epsilon_pseudopure <= eta, or 0 if none.
std::size_t largest_unentangleable(double alpha, std::size_t max_qubits = 64);

inline constexpr double kAdmissibleFloor = -1e-12;

/// Throws NegativeQuasiWeight if any weight is below kAdmissibleFloor.
void assert_lrhv_admissible(const QuasiState& w);

/// Checks admissibility, then clamps weights in [kAdmissibleFloor, 0) to 0 and
/// renormalizes, so the result is a probability vector.
QuasiState make_admissible(QuasiState w);

}  // namespace qlrhv
