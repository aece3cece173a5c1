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

#include "qlrhv/nmr.hpp"

#include <cmath>

#include "qlrhv/error.hpp"

namespace qlrhv {

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::unentangleable:
      return "UNENTANGLEABLE";
    case Regime::open_region:
      return "OPEN_REGION";
    case Regime::entangled_states_exist:
      return "ENTANGLED_STATES_EXIST";
  }
  return "UNKNOWN";
}

double epsilon_pseudopure(const NmrParams& params) {
  if (!(params.alpha > 0.0 && params.alpha < 1.0)) throw BadEpsilon("polarization alpha must lie in (0, 1)");
  const auto n = static_cast<double>(params.num_qubits);
  return params.alpha * n / std::pow(2.0, n);
}

double eta(std::size_t num_qubits) {
  return 1.0 / (1.0 + std::pow(2.0, 2.0 * static_cast<double>(num_qubits) - 1.0));
}

double eta_prime(std::size_t num_qubits) {
  return 1.0 / (1.0 + std::pow(2.0, static_cast<double>(num_qubits) - 1.0));
}

Thresholds thresholds(double epsilon, std::size_t num_qubits) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw BadEpsilon("epsilon must lie in [0, 1]");
  Thresholds t{epsilon, eta(num_qubits), eta_prime(num_qubits), Regime::unentangleable};
  if (epsilon > t.eta_prime) {
    t.regime = Regime::entangled_states_exist;
  } else if (epsilon > t.eta) {
    t.regime = Regime::open_region;
  }
  return t;
}

std::size_t largest_unentangleable(double alpha, std::size_t max_qubits) {
  std::size_t best = 0;
  for (std::size_t n = 1; n <= max_qubits; ++n) {
    if (epsilon_pseudopure({alpha, n}) <= eta(n)) best = n;
  }
  return best;
}

void assert_lrhv_admissible(const QuasiState& w) {
  const std::size_t i = w.argmin();
  if (w[i] < kAdmissibleFloor) {
    throw NegativeQuasiWeight(i, w[i], "state lies outside the hidden-variable model's domain");
  }
}

QuasiState make_admissible(QuasiState w) {
  assert_lrhv_admissible(w);
  bool clamped = false;
  for (double& v : w.weights()) {
    if (v < 0.0) {
      v = 0.0;
      clamped = true;
    }
  }
  if (!clamped) return w;
  const double total = w.total();
  for (double& v : w.weights()) v /= total;
  return w;
}

}  // namespace qlrhv
