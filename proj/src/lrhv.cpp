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

#include "qlrhv/lrhv.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "qlrhv/error.hpp"
#include "qlrhv/nmr.hpp"

namespace qlrhv {

namespace {

std::vector<double> prefix_sums(const QuasiState& w) {
  assert_lrhv_admissible(w);
  std::vector<double> cdf(w.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    acc += std::max(w[i], 0.0);
    cdf[i] = acc;
  }
  if (!(acc > 0.0)) throw NegativeQuasiWeight(0, 0.0, "hidden vector has no positive weight");
  return cdf;
}

// Outcome of every threshold against a.m: +1 iff lambda >= -dot.
struct AxisTable {
  std::vector<double> neg_dot;  // -a.n per frame direction
  bool zero = true;
};

std::vector<AxisTable> axis_tables(const Frame& frame, const MeasurementSpec& spec) {
  std::vector<AxisTable> tables(spec.size());
  for (std::size_t r = 0; r < spec.size(); ++r) {
    tables[r].zero = spec.axes[r].is_zero();
    tables[r].neg_dot.resize(frame.size());
    for (std::size_t d = 0; d < frame.size(); ++d) tables[r].neg_dot[d] = -spec.axes[r].dot_m(frame[d]);
  }
  return tables;
}

std::size_t interval_steps(double t, double dt) { return static_cast<std::size_t>(std::llround(t / dt)); }

}  // namespace

RouletteWheel::RouletteWheel(const QuasiState& w) : cdf_(prefix_sums(w)) {}

std::size_t RouletteWheel::spin(double u) const {
  const double x = u * cdf_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), x);
  if (it == cdf_.end()) {
    // u * total rounded up to total: fall back to the last tuple with positive weight.
    std::size_t i = cdf_.size() - 1;
    while (i > 0 && cdf_[i - 1] == cdf_[i]) --i;
    return i;
  }
  return static_cast<std::size_t>(it - cdf_.begin());
}

Ensemble::Ensemble(const QuasiState& w, std::size_t molecules, std::uint64_t seed)
    : hidden_(make_admissible(w)), wheel_(hidden_), rng_(seed), seed_(seed) {
  if (molecules == 0) throw ShapeError("an ensemble needs at least one molecule");
  dirs_.resize(molecules * num_qubits());
  lambdas_.resize(molecules * num_qubits());
  updates_.assign(molecules, 0);
  resample_all();
}

Molecule Ensemble::molecule(std::size_t i) const {
  Molecule m;
  m.updates = updates_[i];
  for (std::size_t r = 0; r < num_qubits(); ++r) {
    m.directions.push_back(direction(i, r));
    m.lambdas.push_back(lambda(i, r));
  }
  return m;
}

std::size_t Ensemble::tuple_of(std::size_t i) const {
  std::size_t code = 0;
  for (std::size_t r = 0; r < num_qubits(); ++r) code = code * hidden_.frame().size() + direction(i, r);
  return code;
}

void Ensemble::set_hidden_vector(QuasiState w) {
  if (w.num_qubits() != hidden_.num_qubits() || !(w.frame() == hidden_.frame())) {
    throw ShapeError("hidden vector must keep the ensemble's qubit count and frame");
  }
  QuasiState admissible = make_admissible(std::move(w));
  wheel_ = RouletteWheel(admissible);
  hidden_ = std::move(admissible);
}

void Ensemble::resample(std::size_t i) {
  const std::size_t n = num_qubits();
  const std::size_t f = hidden_.frame().size();
  const std::uint32_t event = updates_[i];
  // Variate 0 spins the wheel, variates 1..N are the thresholds.
  double u[2] = {0.0, 0.0};
  for (std::size_t v = 0; v <= n; ++v) {
    if (v % 2 == 0) {
      const auto pair = rng_.uniform2(RngStream::resample, i, event, static_cast<std::uint32_t>(v / 2));
      u[0] = pair[0];
      u[1] = pair[1];
    }
    const double x = u[v % 2];
    if (v == 0) {
      std::size_t code = wheel_.spin(x);
      for (std::size_t r = n; r-- > 0;) {
        dirs_[i * n + r] = static_cast<std::uint16_t>(code % f);
        code /= f;
      }
    } else {
      lambdas_[i * n + v - 1] = 2.0 * x - 1.0;
    }
  }
  ++updates_[i];
}

void Ensemble::resample_all() {
  const auto m = static_cast<std::int64_t>(size());
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::int64_t i = 0; i < m; ++i) resample(static_cast<std::size_t>(i));
}

double Ensemble::decision_variate(std::size_t i, std::uint32_t step) const {
  return rng_.uniform2(RngStream::decision, i, step, 0)[0];
}

Ensemble init_ensemble(const QuasiState& w, std::size_t molecules, std::uint64_t seed) {
  return Ensemble(w, molecules, seed);
}

CorrelationEstimate estimate_correlation(const Ensemble& e, const MeasurementSpec& spec) {
  const std::size_t n = e.num_qubits();
  if (spec.size() != n) throw ShapeError("measurement spec length does not match qubit count");
  const auto tables = axis_tables(e.hidden_vector().frame(), spec);
  std::vector<std::size_t> active;
  for (std::size_t r = 0; r < n; ++r) {
    if (!tables[r].zero) active.push_back(r);
  }
  const auto m = static_cast<std::int64_t>(e.size());
  CorrelationEstimate out;
  out.samples = e.size();
  if (active.empty()) {
    out.mean = 1.0;
    return out;
  }
  // Products are +-1, so the integer sum is exact in any order.
  std::int64_t sum = 0;
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel for schedule(static) reduction(+ : sum)
#endif
  for (std::int64_t i = 0; i < m; ++i) {
    const auto mol = static_cast<std::size_t>(i);
    int product = 1;
    for (std::size_t r : active) {
      if (e.lambda(mol, r) < tables[r].neg_dot[e.direction(mol, r)]) product = -product;
    }
    sum += product;
  }
  const double count = static_cast<double>(m);
  out.mean = static_cast<double>(sum) / count;
  if (m > 1) {
    const double variance = std::max(0.0, (1.0 - out.mean * out.mean) * count / (count - 1.0));
    out.std_error = std::sqrt(variance / count);
  }
  return out;
}

std::vector<std::int8_t> outcomes(const Ensemble& e, std::size_t r, const Axis& a) {
  if (r >= e.num_qubits()) throw BadTargets("qubit index out of range");
  std::vector<std::int8_t> out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = static_cast<std::int8_t>(e.outcome(i, r, a));
  return out;
}

void update_discrete(Ensemble& e, const TransitionMatrix& t, const UpdateOptions& options) {
  QuasiState next = apply_gate(e.hidden_vector(), t);
  if (options.canonicalize) next = canonicalize(next);
  e.set_hidden_vector(std::move(next));
  e.resample_all();
}

UpdateSchedule UpdateSchedule::back_to_back(std::size_t num_gates, double pulse_length, double gamma, double dt,
                                            double gap) {
  UpdateSchedule s;
  s.mode = UpdateMode::quasicontinuous;
  s.gamma = gamma;
  s.dt = dt;
  double t = gap;
  for (std::size_t g = 0; g < num_gates; ++g) {
    s.pulses.push_back({t, t + pulse_length});
    t += pulse_length + gap;
  }
  s.duration = t;
  return s;
}

void Trajectory::record(const Ensemble& e, double time, std::size_t step) {
  Snapshot snap;
  snap.time = time;
  snap.step = step;
  for (const MeasurementSpec& spec : specs) snap.correlations.push_back(estimate_correlation(e, spec));
  for (const TemporalProbe& probe : probes) snap.outcomes.push_back(outcomes(e, probe.qubit, probe.axis));
  snapshots.push_back(std::move(snap));
}

Trajectory run_discrete(Ensemble& e, const Circuit& circuit, const TrajectoryOptions& options) {
  if (circuit.num_qubits() != e.num_qubits()) throw ShapeError("circuit width does not match the ensemble");
  Trajectory traj{options.specs, options.probes, {}, {}};
  traj.record(e, 0.0, 0);
  std::size_t step = 0;
  for (const Gate& g : circuit.gates()) {
    update_discrete(e, transition_matrix(g.matrix, e.hidden_vector().frame(), g.targets), options.update);
    e.advance_step();
    ++step;
    traj.record(e, static_cast<double>(step), step);
  }
  return traj;
}

Trajectory run_quasicontinuous(Ensemble& e, const UpdateSchedule& schedule, const Circuit& circuit,
                               const TrajectoryOptions& options) {
  if (circuit.num_qubits() != e.num_qubits()) throw ShapeError("circuit width does not match the ensemble");
  const double p = schedule.update_probability();
  if (!(schedule.dt > 0.0) || !(p > 0.0 && p <= 1.0)) throw BadSchedule("gamma * dt must lie in (0, 1]");
  if (schedule.pulses.size() != circuit.size()) throw BadSchedule("need exactly one pulse interval per gate");
  if (options.snapshot_every == 0) throw BadSchedule("snapshot_every must be positive");

  struct StepRange {
    std::size_t begin, end;
  };
  std::vector<StepRange> ranges;
  std::size_t last_end = 0;
  for (const PulseInterval& pulse : schedule.pulses) {
    const StepRange r{interval_steps(pulse.start, schedule.dt), interval_steps(pulse.end, schedule.dt)};
    if (pulse.start < 0.0 || r.end <= r.begin) throw BadSchedule("pulse interval shorter than one step");
    if (r.begin < last_end) throw BadSchedule("pulse intervals overlap or are out of order");
    last_end = r.end;
    ranges.push_back(r);
  }
  const std::size_t total_steps = std::max(last_end, interval_steps(schedule.duration, schedule.dt));

  std::vector<TransitionMatrix> transitions;
  for (const Gate& g : circuit.gates()) {
    transitions.push_back(transition_matrix(g.matrix, e.hidden_vector().frame(), g.targets));
  }

  Trajectory traj{options.specs, options.probes, {}, {}};
  traj.record(e, 0.0, 0);
  const std::size_t m = e.size();
  std::vector<std::uint8_t> pending(m, 0);
  std::vector<std::uint32_t> counts(m, 0);
  std::size_t next_gate = 0;
  bool in_pulse = false;

  for (std::size_t s = 0; s < total_steps; ++s) {
    if (next_gate < ranges.size() && s == ranges[next_gate].begin) {
      // The shared hidden vector advances once per pulse; molecules catch up as they update.
      QuasiState next = apply_gate(e.hidden_vector(), transitions[next_gate]);
      if (options.update.canonicalize) next = canonicalize(next);
      e.set_hidden_vector(std::move(next));
      std::fill(pending.begin(), pending.end(), 1);
      std::fill(counts.begin(), counts.end(), 0);
      in_pulse = true;
    }
    const std::uint32_t step_id = e.steps();
    const auto mm = static_cast<std::int64_t>(m);
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::int64_t ii = 0; ii < mm; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      if (e.decision_variate(i, step_id) < p) {
        e.resample(i);
        pending[i] = 0;
        ++counts[i];
      }
    }
    bool pulse_closed = false;
    if (in_pulse && s + 1 == ranges[next_gate].end) {
      pulse_closed = true;
      IntervalStats stats;
      stats.gate = next_gate;
      stats.length = static_cast<double>(ranges[next_gate].end - ranges[next_gate].begin) * schedule.dt;
      double sum = 0.0, sum_sq = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        sum += counts[i];
        sum_sq += static_cast<double>(counts[i]) * counts[i];
        if (pending[i]) {
          e.resample(i);
          ++stats.forced;
        }
      }
      const double dm = static_cast<double>(m);
      stats.mean_updates = sum / dm;
      if (m > 1) {
        const double var = std::max(0.0, (sum_sq - dm * stats.mean_updates * stats.mean_updates) / (dm - 1.0));
        stats.std_error = std::sqrt(var / dm);
      }
      traj.intervals.push_back(stats);
      in_pulse = false;
      ++next_gate;
    }
    e.advance_step();
    const bool due = options.pulse_ends_only ? pulse_closed : (s + 1) % options.snapshot_every == 0;
    if (due || s + 1 == total_steps) {
      traj.record(e, static_cast<double>(s + 1) * schedule.dt, s + 1);
    }
  }
  return traj;
}

Trajectory run_schedule(Ensemble& e, const UpdateSchedule& schedule, const Circuit& circuit,
                        const TrajectoryOptions& options) {
  if (schedule.mode == UpdateMode::discrete) return run_discrete(e, circuit, options);
  return run_quasicontinuous(e, schedule, circuit, options);
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ParseError("cannot open " + path.string() + " for writing");
  os.precision(17);
  os << "time,spec_id,mean,std_error\n";
  for (const Snapshot& snap : trajectory.snapshots) {
    for (std::size_t k = 0; k < snap.correlations.size(); ++k) {
      os << snap.time << ',' << k << ',' << snap.correlations[k].mean << ',' << snap.correlations[k].std_error
         << '\n';
    }
  }
}

void write_trajectory_sidecar(const std::filesystem::path& path, const Trajectory& trajectory,
                              const UpdateSchedule& schedule, std::uint64_t seed, std::size_t molecules) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["molecules"] = molecules;
  auto& s = j["schedule"];
  s["mode"] = schedule.mode == UpdateMode::discrete ? "discrete" : "quasicontinuous";
  s["gamma"] = schedule.gamma;
  s["dt"] = schedule.dt;
  s["duration"] = schedule.duration;
  s["pulses"] = nlohmann::ordered_json::array();
  for (const PulseInterval& p : schedule.pulses) s["pulses"].push_back({{"start", p.start}, {"end", p.end}});
  j["specs"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < trajectory.specs.size(); ++k) {
    j["specs"].push_back({{"spec_id", k}, {"axes", trajectory.specs[k].label()}});
  }
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw ParseError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
}

}  // namespace qlrhv
