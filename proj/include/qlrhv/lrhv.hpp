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
#include <cstdint>
#include <filesystem>
#include <random>
#include <vector>

#include "qlrhv/circuit.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/quasi.hpp"
#include "qlrhv/rng.hpp"

namespace qlrhv {

/// Inverse-CDF sampler over direction tuples, weighted by a nonnegative
/// hidden vector.
class RouletteWheel {
 public:
  /// Throws NegativeQuasiWeight if `w` is not admissible.
  explicit RouletteWheel(const QuasiState& w);

  /// Tuple index for a uniform variate u in [0, 1). Zero-weight tuples are never returned.
  std::size_t spin(double u) const;

  template <class Urbg>
  std::size_t spin(Urbg& rng) const {
    return spin(std::uniform_real_distribution<double>(0.0, 1.0)(rng));
  }

  std::size_t size() const noexcept { return cdf_.size(); }

 private:
  std::vector<double> cdf_;
};

/// One spin of a wheel weighted by `w`; consumes exactly one variate.
template <class Urbg>
std::vector<std::size_t> spin_wheel(const QuasiState& w, Urbg& rng) {
  const RouletteWheel wheel(w);
  return tuple_digits(wheel.spin(rng), w.num_qubits(), w.frame().size());
}

/// +1 if lambda >= -a.m, else -1, with a.m = a.n for spatial a and 1 for the zero axis.
inline int measure_component(const Axis& a, double lambda, const Vec3& n) {
  return lambda >= -a.dot_m(n) ? 1 : -1;
}

/// Per-molecule hidden variables apart from the shared hidden vector.
struct Molecule {
  std::vector<std::size_t> directions;  ///< frame index per spin
  std::vector<double> lambdas;          ///< uniform thresholds in [-1, 1]
  std::uint32_t updates = 0;            ///< resamples so far, including the initial draw
};

struct CorrelationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/**
 * M molecules sharing one hidden vector w. Each molecule holds a direction
 * tuple drawn with probability w(n) and N thresholds uniform on [-1, 1].
 *
 * Molecule i's k-th resample reads the counter-based stream
 * (seed, i, k), so results do not depend on thread count or on the order in
 * which molecules are visited. Measurement never mutates the ensemble.
 */
class Ensemble {
 public:
  static constexpr std::size_t kDefaultMolecules = 1'000'000;

  /// Throws NegativeQuasiWeight (not admissible) or ShapeError (M = 0).
  Ensemble(const QuasiState& w, std::size_t molecules, std::uint64_t seed);

  const QuasiState& hidden_vector() const noexcept { return hidden_; }
  std::size_t size() const noexcept { return updates_.size(); }
  std::size_t num_qubits() const noexcept { return hidden_.num_qubits(); }
  std::uint64_t seed() const noexcept { return seed_; }

  Molecule molecule(std::size_t i) const;
  std::size_t direction(std::size_t i, std::size_t r) const { return dirs_[i * num_qubits() + r]; }
  double lambda(std::size_t i, std::size_t r) const { return lambdas_[i * num_qubits() + r]; }
  std::uint32_t updates(std::size_t i) const { return updates_[i]; }
  /// Radix-frame-size code of molecule i's direction tuple.
  std::size_t tuple_of(std::size_t i) const;

  /// A_r(a, lambda_r, n_r) for molecule i.
  int outcome(std::size_t i, std::size_t r, const Axis& a) const {
    return measure_component(a, lambda(i, r), hidden_.frame()[direction(i, r)]);
  }

  /// Replaces w (admissibility enforced, tiny negatives clamped) without resampling.
  void set_hidden_vector(QuasiState w);
  /// Fresh directions from the current wheel and fresh thresholds, from the molecule's next stream.
  void resample(std::size_t i);
  void resample_all();

  /// Uniform variate for the quasicontinuous update decision of molecule i at step `step`.
  double decision_variate(std::size_t i, std::uint32_t step) const;
  /// Global step counter used to address decision variates.
  std::uint32_t steps() const noexcept { return steps_; }
  void advance_step() noexcept { ++steps_; }

 private:
  QuasiState hidden_;
  RouletteWheel wheel_;
  MoleculeRng rng_;
  std::uint64_t seed_;
  std::vector<std::uint16_t> dirs_;
  std::vector<double> lambdas_;
  std::vector<std::uint32_t> updates_;
  std::uint32_t steps_ = 0;
};

Ensemble init_ensemble(const QuasiState& w, std::size_t molecules, std::uint64_t seed);

/// Mean over molecules of prod_r A_r(a_r, lambda_r, n_r) and its standard error.
CorrelationEstimate estimate_correlation(const Ensemble& e, const MeasurementSpec& spec);

/// Per-molecule outcomes of spin r along a.
std::vector<std::int8_t> outcomes(const Ensemble& e, std::size_t r, const Axis& a);

struct UpdateOptions {
  /// Apply the identity transition matrix to every qubit after the gate.
  bool canonicalize = false;
};

/// w <- T w (deterministic), then every molecule redraws its directions and
/// thresholds. Throws NegativeQuasiWeight if the new w leaves the model's domain.
void update_discrete(Ensemble& e, const TransitionMatrix& t, const UpdateOptions& options = {});

enum class UpdateMode { discrete, quasicontinuous };

struct PulseInterval {
  double start = 0.0;
  double end = 0.0;
};

/**
 * Timing of hidden-variable updates. In quasicontinuous mode each molecule
 * updates with probability gamma*dt per step; gate i acts during pulses[i].
 */
struct UpdateSchedule {
  UpdateMode mode = UpdateMode::discrete;
  double gamma = 1.0;
  double dt = 1.0;
  std::vector<PulseInterval> pulses;
  /// Simulated time; 0 means "end of the last pulse".
  double duration = 0.0;

  double update_probability() const { return gamma * dt; }

  /// Consecutive pulses of equal length separated by `gap`, starting at `gap`.
  static UpdateSchedule back_to_back(std::size_t num_gates, double pulse_length, double gamma, double dt,
                                     double gap = 0.0);
};

/// Per-molecule outcome logging for one spin and axis (for two-time correlators).
struct TemporalProbe {
  std::size_t qubit = 0;
  Axis axis = Axis::zero();
};

struct TrajectoryOptions {
  std::vector<MeasurementSpec> specs;
  std::vector<TemporalProbe> probes;
  std::size_t snapshot_every = 1;  ///< steps between snapshots
  /// Quasicontinuous mode: snapshot only at pulse ends and at the end of the
  /// run, when every molecule reflects the gates completed so far.
  bool pulse_ends_only = false;
  UpdateOptions update;
};

struct Snapshot {
  double time = 0.0;
  std::size_t step = 0;
  std::vector<CorrelationEstimate> correlations;  ///< one per spec
  std::vector<std::vector<std::int8_t>> outcomes;  ///< one per probe, one entry per molecule
};

/// Update statistics of one pulse interval (quasicontinuous mode).
struct IntervalStats {
  std::size_t gate = 0;
  double length = 0.0;
  double mean_updates = 0.0;  ///< stochastic updates per molecule
  double std_error = 0.0;
  std::size_t forced = 0;  ///< molecules forced to update at the interval end
};

struct Trajectory {
  std::vector<MeasurementSpec> specs;
  std::vector<TemporalProbe> probes;
  std::vector<Snapshot> snapshots;
  std::vector<IntervalStats> intervals;

  /// Appends a snapshot of `e` at the given time.
  void record(const Ensemble& e, double time, std::size_t step);
};

/// Discrete mode: one snapshot before the circuit and one after each gate.
Trajectory run_discrete(Ensemble& e, const Circuit& circuit, const TrajectoryOptions& options);

/// Quasicontinuous mode; see UpdateSchedule. Molecules that did not update
/// during a pulse are forced to update once at its end.
Trajectory run_quasicontinuous(Ensemble& e, const UpdateSchedule& schedule, const Circuit& circuit,
                               const TrajectoryOptions& options);

/// Dispatches on schedule.mode.
Trajectory run_schedule(Ensemble& e, const UpdateSchedule& schedule, const Circuit& circuit,
                        const TrajectoryOptions& options);

/// CSV with columns time,spec_id,mean,std_error.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);
/// JSON sidecar: schedule, seed, molecule count, and the spec list.
void write_trajectory_sidecar(const std::filesystem::path& path, const Trajectory& trajectory,
                              const UpdateSchedule& schedule, std::uint64_t seed, std::size_t molecules);

}  // namespace qlrhv
