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

#include "qlrhv/bell.hpp"

#include <bit>
#include <cmath>

#include "qlrhv/error.hpp"

namespace qlrhv {

namespace {

MeasurementSpec pair_spec(std::size_t n, std::size_t r, const Vec3& a, std::size_t s, const Vec3& b) {
  MeasurementSpec spec;
  spec.axes.assign(n, Axis::zero());
  spec.axes[r] = Axis::toward(a);
  spec.axes[s] = Axis::toward(b);
  return spec;
}

void check_pair(std::size_t n, std::size_t r, std::size_t s) {
  if (r >= n || s >= n || r == s) throw BadTargets("CHSH needs two distinct qubits in range");
}

std::vector<Vec3> grid(std::size_t resolution, ScanPlane plane) {
  if (resolution < 8) throw ShapeError("CHSH scans need at least 8 grid points per angle");
  std::vector<Vec3> dirs;
  if (plane == ScanPlane::xz) {
    for (std::size_t i = 0; i < resolution; ++i) {
      const double theta = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(resolution);
      dirs.emplace_back(std::sin(theta), 0.0, std::cos(theta));
    }
    return dirs;
  }
  for (std::size_t i = 0; i < resolution; ++i) {
    const double theta = M_PI * static_cast<double>(i) / static_cast<double>(resolution - 1);
    for (std::size_t j = 0; j < resolution; ++j) {
      const double phi = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(resolution);
      dirs.emplace_back(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    }
  }
  return dirs;
}

// Maximizes |S| over a full table c[i * d + j] = C(dir_i, dir_j). For fixed
// (a, a'), S splits into independent terms in b and b'.
ChshScan maximize(const std::vector<double>& c, const std::vector<Vec3>& dirs, std::size_t r, std::size_t s) {
  const std::size_t d = dirs.size();
  ChshScan best;
  best.max_abs_s = -1.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t i2 = 0; i2 < d; ++i2) {
      double hi_b = -1e300, lo_b = 1e300, hi_bp = -1e300, lo_bp = 1e300;
      std::size_t hi_b_j = 0, lo_b_j = 0, hi_bp_j = 0, lo_bp_j = 0;
      for (std::size_t j = 0; j < d; ++j) {
        const double sum = c[i * d + j] + c[i2 * d + j];
        const double diff = c[i * d + j] - c[i2 * d + j];
        if (sum > hi_b) hi_b = sum, hi_b_j = j;
        if (sum < lo_b) lo_b = sum, lo_b_j = j;
        if (diff > hi_bp) hi_bp = diff, hi_bp_j = j;
        if (diff < lo_bp) lo_bp = diff, lo_bp_j = j;
      }
      const double hi = hi_b + hi_bp, lo = lo_b + lo_bp;
      const bool use_hi = std::abs(hi) >= std::abs(lo);
      const double value = use_hi ? hi : lo;
      if (std::abs(value) > best.max_abs_s) {
        best.max_abs_s = std::abs(value);
        best.s = value;
        best.argmax = ChshSetting{r, s, dirs[i], dirs[i2], dirs[use_hi ? hi_b_j : lo_b_j],
                                  dirs[use_hi ? hi_bp_j : lo_bp_j]};
      }
    }
  }
  return best;
}

using Bits = std::vector<std::uint64_t>;

Bits outcome_bits(const Ensemble& e, std::size_t r, const Vec3& a) {
  const Axis axis = Axis::toward(a);
  const std::size_t m = e.size();
  Bits bits((m + 63) / 64, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (e.outcome(i, r, axis) > 0) bits[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  return bits;
}

}  // namespace

double chsh_value(const PairCorrelator& correlator, const ChshSetting& setting) {
  return correlator(setting.a, setting.b) + correlator(setting.a, setting.b_prime) +
         correlator(setting.a_prime, setting.b) - correlator(setting.a_prime, setting.b_prime);
}

PairCorrelator oracle_correlator(const DensityOperator& rho, std::size_t r, std::size_t s) {
  check_pair(rho.num_qubits(), r, s);
  return [rho, r, s](const Vec3& a, const Vec3& b) {
    return correlation_trace(rho, pair_spec(rho.num_qubits(), r, a, s, b));
  };
}

PairCorrelator quasi_correlator(const QuasiState& w, std::size_t r, std::size_t s) {
  check_pair(w.num_qubits(), r, s);
  return [w, r, s](const Vec3& a, const Vec3& b) {
    return correlation_quasi(w, pair_spec(w.num_qubits(), r, a, s, b));
  };
}

PairCorrelator lrhv_correlator(const Ensemble& e, std::size_t r, std::size_t s) {
  check_pair(e.num_qubits(), r, s);
  return [&e, r, s](const Vec3& a, const Vec3& b) {
    return estimate_correlation(e, pair_spec(e.num_qubits(), r, a, s, b)).mean;
  };
}

ChshScan scan_max_chsh(const PairCorrelator& correlator, std::size_t r, std::size_t s, std::size_t resolution,
                       ScanPlane plane) {
  const auto dirs = grid(resolution, plane);
  const std::size_t d = dirs.size();
  std::vector<double> c(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) c[i * d + j] = correlator(dirs[i], dirs[j]);
  }
  return maximize(c, dirs, r, s);
}

ChshScan scan_max_chsh(const Ensemble& e, std::size_t r, std::size_t s, std::size_t resolution, ScanPlane plane) {
  check_pair(e.num_qubits(), r, s);
  const auto dirs = grid(resolution, plane);
  const std::size_t d = dirs.size();
  std::vector<Bits> bits_r(d), bits_s(d);
  for (std::size_t i = 0; i < d; ++i) {
    bits_r[i] = outcome_bits(e, r, dirs[i]);
    bits_s[i] = outcome_bits(e, s, dirs[i]);
  }
  const double m = static_cast<double>(e.size());
  std::vector<double> c(d * d);
  const auto dd = static_cast<std::int64_t>(d * d);
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t k = 0; k < dd; ++k) {
    const auto i = static_cast<std::size_t>(k) / d, j = static_cast<std::size_t>(k) % d;
    std::int64_t disagree = 0;
    for (std::size_t w = 0; w < bits_r[i].size(); ++w) disagree += std::popcount(bits_r[i][w] ^ bits_s[j][w]);
    c[static_cast<std::size_t>(k)] = (m - 2.0 * static_cast<double>(disagree)) / m;
  }
  ChshScan scan = maximize(c, dirs, r, s);
  scan.std_error = chsh_estimate(e, scan.argmax).std_error;
  return scan;
}

CorrelationEstimate chsh_estimate(const Ensemble& e, const ChshSetting& setting) {
  check_pair(e.num_qubits(), setting.qubit_r, setting.qubit_s);
  const Axis a = Axis::toward(setting.a), ap = Axis::toward(setting.a_prime);
  const Axis b = Axis::toward(setting.b), bp = Axis::toward(setting.b_prime);
  std::int64_t sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const int oa = e.outcome(i, setting.qubit_r, a), oap = e.outcome(i, setting.qubit_r, ap);
    const int ob = e.outcome(i, setting.qubit_s, b), obp = e.outcome(i, setting.qubit_s, bp);
    const int v = oa * ob + oa * obp + oap * ob - oap * obp;
    sum += v;
    sum_sq += v * v;
  }
  CorrelationEstimate out;
  out.samples = e.size();
  const double m = static_cast<double>(e.size());
  out.mean = static_cast<double>(sum) / m;
  if (e.size() > 1) {
    const double var = std::max(0.0, (static_cast<double>(sum_sq) - m * out.mean * out.mean) / (m - 1.0));
    out.std_error = std::sqrt(var / m);
  }
  return out;
}

LeggettGarg leggett_garg(const Trajectory& trajectory, const TemporalSetting& setting) {
  const auto& t = setting.times;
  if (!(t[0] < t[1] && t[1] < t[2])) throw BadTrajectory("snapshot times must be strictly increasing");
  if (t[2] >= trajectory.snapshots.size()) throw BadTrajectory("snapshot index out of range");
  std::size_t probe = trajectory.probes.size();
  for (std::size_t k = 0; k < trajectory.probes.size(); ++k) {
    if (trajectory.probes[k].qubit == setting.qubit && trajectory.probes[k].axis == setting.axis) probe = k;
  }
  if (probe == trajectory.probes.size()) throw BadTrajectory("no outcome log for this qubit and axis");
  const auto& o1 = trajectory.snapshots[t[0]].outcomes.at(probe);
  const auto& o2 = trajectory.snapshots[t[1]].outcomes.at(probe);
  const auto& o3 = trajectory.snapshots[t[2]].outcomes.at(probe);
  if (o1.size() != o2.size() || o2.size() != o3.size() || o1.empty()) {
    throw BadTrajectory("outcome logs have inconsistent lengths");
  }
  std::int64_t sum = 0, sum_sq = 0;
  for (std::size_t i = 0; i < o1.size(); ++i) {
    const int k = o1[i] * o2[i] + o2[i] * o3[i] - o1[i] * o3[i];
    sum += k;
    sum_sq += k * k;
  }
  const double m = static_cast<double>(o1.size());
  LeggettGarg out;
  out.k3 = static_cast<double>(sum) / m;
  if (o1.size() > 1) {
    const double var = std::max(0.0, (static_cast<double>(sum_sq) - m * out.k3 * out.k3) / (m - 1.0));
    out.std_error = std::sqrt(var / m);
  }
  return out;
}

namespace {

nlohmann::ordered_json vec_json(const Vec3& v) { return {v.x(), v.y(), v.z()}; }

}  // namespace

nlohmann::ordered_json bell_report(const ChshScan& scan, double sigmas) {
  nlohmann::ordered_json j;
  j["setting"] = {{"kind", "CHSH"},
                  {"qubits", {scan.argmax.qubit_r, scan.argmax.qubit_s}},
                  {"a", vec_json(scan.argmax.a)},
                  {"a_prime", vec_json(scan.argmax.a_prime)},
                  {"b", vec_json(scan.argmax.b)},
                  {"b_prime", vec_json(scan.argmax.b_prime)}};
  j["S"] = scan.s;
  j["std_error"] = scan.std_error;
  j["bound"] = kChshBound;
  j["violated"] = scan.max_abs_s - kChshBound > sigmas * scan.std_error;
  return j;
}

nlohmann::ordered_json bell_report(const TemporalSetting& setting, const LeggettGarg& result, double sigmas) {
  nlohmann::ordered_json j;
  j["setting"] = {{"kind", "LeggettGarg"},
                  {"times", {setting.times[0], setting.times[1], setting.times[2]}},
                  {"qubit", setting.qubit},
                  {"axis", setting.axis.label()}};
  j["K3"] = result.k3;
  j["std_error"] = result.std_error;
  j["bound"] = kLeggettGargBound;
  j["violated"] = result.k3 - kLeggettGargBound > sigmas * result.std_error;
  return j;
}

}  // namespace qlrhv
