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

// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "experiment.hpp"
#include "oracles.hpp"
#include "qlrhv/bell.hpp"
#include "qlrhv/lrhv.hpp"
#include "qlrhv/nmr.hpp"
#include "qlrhv/oracle.hpp"
#include "qlrhv/parallel.hpp"
#include "qlrhv/quasi.hpp"

namespace {

using namespace qlrhv;
namespace ot = qlrhv::oracle_test;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

double z_of(double mean, double std_error, double reference) {
  const double diff = std::abs(mean - reference);
  if (std_error > 0.0) return diff / std_error;
  return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
}

double two_sample_z(const CorrelationEstimate& a, const CorrelationEstimate& b) {
  const double se = std::hypot(a.std_error, b.std_error);
  return z_of(a.mean, se, b.mean);
}

ComplexMatrix projector(const Vec3& n) {
  return 0.5 * (ComplexMatrix::Identity(2, 2) + ot::sigma_dot(n));
}

const std::vector<Frame>& frames() {
  static const std::vector<Frame> f{Frame::tetrahedron(), Frame::cardinal6()};
  return f;
}

Outcome frame_identities() {
  double worst = 0.0;
  for (const Frame& f : frames()) {
    Vec3 sum = Vec3::Zero();
    Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
    for (const Vec3& n : f.vectors()) {
      sum += n;
      second += n * n.transpose();
    }
    second /= static_cast<double>(f.size());
    worst = std::max({worst, sum.cwiseAbs().maxCoeff(), (second - Eigen::Matrix3d::Identity() / 3.0).cwiseAbs().maxCoeff()});
    for (const Vec3& n : f.vectors()) worst = std::max(worst, std::abs(n.norm() - 1.0));
  }
  return {worst <= 1e-12, fmt("max residual %.3g over both frames (limit 1e-12)", worst)};
}

Outcome representation_exactness() {
  std::mt19937_64 rng(2024);
  double rho_err = 0.0, corr_err = 0.0;
  for (std::size_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Frame& f = frames()[(trial / 3) % 2];
    const std::size_t rank = 1 + trial % (std::size_t{1} << n);
    const DensityOperator rho = random_state(n, rank, 5000 + trial);
    const QuasiState w = quasi_from_density(rho, f);
    rho_err = std::max(rho_err, ot::max_abs(density_from_quasi(w).matrix() - rho.matrix()));
    rho_err = std::max(rho_err, ot::max_abs(ot::reconstruct(std::vector<double>(w.weights().begin(), w.weights().end()), f, n) - rho.matrix()));
    for (int s = 0; s < 50; ++s) {
      const MeasurementSpec spec = ot::random_spec(n, rng);
      corr_err = std::max(corr_err, std::abs(correlation_quasi(w, spec) - ot::correlation(rho.matrix(), spec)));
    }
  }
  const bool pass = rho_err <= 1e-10 && corr_err <= 1e-10;
  return {pass, fmt("200 states, max |rho - rho'| %.3g, max correlator error %.3g over 10000 specs (limit 1e-10)",
                    rho_err, corr_err)};
}

Outcome dynamics_exactness() {
  std::mt19937_64 rng(77);
  double local_err = 0.0;
  for (std::size_t trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const std::size_t k = 1 + (trial / 3) % 2;
    const Frame& f = frames()[trial % 2];
    std::vector<std::size_t> qubits(n);
    for (std::size_t q = 0; q < n; ++q) qubits[q] = q;
    std::shuffle(qubits.begin(), qubits.end(), rng);
    const std::vector<std::size_t> targets(qubits.begin(), qubits.begin() + static_cast<std::ptrdiff_t>(k));
    const ComplexMatrix u = random_unitary(k, 9000 + trial);
    const DensityOperator rho = random_state(n, 1 + trial % 3, 7000 + trial);
    const ComplexMatrix full = ot::embed(u, targets, n);
    const ComplexMatrix expected = full * rho.matrix() * full.adjoint();
    const QuasiState w = apply_gate(quasi_from_density(rho, f), transition_matrix(u, f, targets));
    local_err = std::max(local_err, ot::max_abs(ot::reconstruct(std::vector<double>(w.weights().begin(), w.weights().end()), f, n) - expected));
  }

  const std::size_t n = 8;
  const Frame& f = Frame::tetrahedron();
  ComplexMatrix rho = random_state(n, 2, 31337).matrix();
  QuasiState w = quasi_from_density(DensityOperator(rho, n), f);
  for (std::size_t g = 0; g < 20; ++g) {
    const std::size_t k = 1 + g % 2;
    std::vector<std::size_t> qubits(n);
    for (std::size_t q = 0; q < n; ++q) qubits[q] = q;
    std::shuffle(qubits.begin(), qubits.end(), rng);
    const std::vector<std::size_t> targets(qubits.begin(), qubits.begin() + static_cast<std::ptrdiff_t>(k));
    const ComplexMatrix u = random_unitary(k, 100 + g);
    const ComplexMatrix full = ot::embed(u, targets, n);
    rho = full * rho * full.adjoint();
    apply_gate_in_place(w, transition_matrix(u, f, targets));
  }
  double circuit_err = 0.0;
  for (int s = 0; s < 20; ++s) {
    const MeasurementSpec spec = ot::random_spec(n, rng, 0.2);
    circuit_err = std::max(circuit_err, std::abs(correlation_quasi(w, spec) - ot::correlation(rho, spec)));
  }
  const bool pass = local_err <= 1e-10 && circuit_err <= 1e-8;
  return {pass, fmt("100 gates N=2..4 max error %.3g (limit 1e-10); N=8 20-gate circuit max correlator error %.3g "
                    "(limit 1e-8)",
                    local_err, circuit_err)};
}

Outcome threshold_claim() {
  double worst_min = std::numeric_limits<double>::infinity();
  for (std::size_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const Frame& f = frames()[(trial / 3) % 2];
    const DensityOperator rho1 = random_state(n, 1, 40000 + trial);
    const QuasiState w = quasi_from_density(pseudopure_state(rho1, eta(n)), f);
    worst_min = std::min(worst_min, w.min_weight());
  }

  // |-n1> on qubit 0 and |+n1> elsewhere: the minimal eigenvector of Q(n1,...,n1).
  double zero_err = 0.0;
  for (const Frame& f : frames()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      ComplexMatrix rho1 = projector(-f[0]);
      for (std::size_t r = 1; r < n; ++r) rho1 = ot::kron2(rho1, projector(f[0]));
      const QuasiState w = quasi_from_density(pseudopure_state(DensityOperator(rho1, n), eta(n)), f);
      zero_err = std::max(zero_err, std::abs(w[0]));
      zero_err = std::max(zero_err, std::max(0.0, -w.min_weight()));
    }
  }

  double bound_err = 0.0;
  for (const Frame& f : frames()) {
    for (std::size_t n = 1; n <= 3; ++n) {
      double lowest = std::numeric_limits<double>::infinity();
      const std::size_t count = ot::power(f.size(), n);
      for (std::size_t code = 0; code < count; ++code) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(ot::q_op(f, ot::digits_of(code, n, f.size())),
                                                        Eigen::EigenvaluesOnly);
        lowest = std::min(lowest, es.eigenvalues()(0));
      }
      bound_err = std::max(bound_err, std::abs(lowest - min_quasi_bound(n, f.size())));
    }
  }

  // eta(N) = 1 / (1 + 2^(2N-1)) against eps = alpha N / 2^N, recomputed here.
  const double alpha = 2e-5;
  std::size_t scan = 0;
  for (std::size_t n = 1; n <= 64; ++n) {
    const double eps = alpha * static_cast<double>(n) / std::ldexp(1.0, static_cast<int>(n));
    const double threshold = 1.0 / (1.0 + std::ldexp(1.0, static_cast<int>(2 * n - 1)));
    if (eps <= threshold) scan = n;
  }
  const std::size_t largest = largest_unentangleable(alpha);
  const bool pass = worst_min >= -1e-12 && zero_err <= 1e-12 && bound_err <= 1e-10 && largest == 12 && scan == 12;
  return {pass, fmt("min weight at eta %.3g (limit -1e-12); saturating zero %.3g; bound vs Q spectra %.3g; "
                    "largest unentangleable N %zu (independent scan %zu, expected 12)",
                    worst_min, zero_err, bound_err, largest, scan)};
}

Outcome lrhv_duplicates_qm() {
  struct Case {
    std::size_t n;
    std::vector<std::pair<std::string, std::vector<std::size_t>>> gates;
  };
  const std::vector<Case> cases{{2, {{"H", {0}}, {"CNOT", {0, 1}}}}, {3, {{"H", {0}}, {"CNOT", {0, 1}}, {"CNOT", {1, 2}}}}};
  std::size_t total = 0, within3 = 0;
  double worst = 0.0;
  for (const Case& c : cases) {
    Circuit circuit(c.n);
    for (const auto& [name, targets] : c.gates) circuit.add(name, targets);
    const double eps = eta(c.n);
    ComplexMatrix rho = pseudopure_state(DensityOperator::basis(c.n, 0), eps).matrix();
    Ensemble e(quasi_from_density(DensityOperator(rho, c.n), Frame::tetrahedron()), 1'000'000, 500 + c.n);
    TrajectoryOptions opts;
    opts.specs = all_specs(c.n, pauli_axes());
    const Trajectory traj = run_discrete(e, circuit, opts);
    for (std::size_t t = 0; t < traj.snapshots.size(); ++t) {
      if (t > 0) {
        const Gate& g = circuit.gates()[t - 1];
        const ComplexMatrix full = ot::embed(g.matrix, g.targets, c.n);
        rho = full * rho * full.adjoint();
      }
      for (std::size_t k = 0; k < opts.specs.size(); ++k) {
        const CorrelationEstimate& est = traj.snapshots[t].correlations[k];
        const double z = z_of(est.mean, est.std_error, ot::correlation(rho, opts.specs[k]));
        worst = std::max(worst, z);
        ++total;
        if (z <= 3.0) ++within3;
      }
    }
  }
  const double frac = static_cast<double>(within3) / static_cast<double>(total);
  const bool pass = worst <= 5.0 && frac >= 0.99 && total == 304;
  return {pass, fmt("%zu comparisons, max |z| %.2f (limit 5), %zu within 3 sigma = %.2f%% (limit 99%%)", total, worst,
                    within3, 100.0 * frac)};
}

Outcome no_bell_violation() {
  double worst_excess = -std::numeric_limits<double>::infinity();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const DensityOperator rho = pseudopure_state(random_state(2, 1 + s % 4, 8800 + s), eta(2));
    const Ensemble e(quasi_from_density(rho, frames()[s % 2]), 200'000, 300 + s);
    const ChshScan scan = scan_max_chsh(e, 0, 1, 16);
    worst_excess = std::max(worst_excess, (scan.max_abs_s - 2.0) / scan.std_error);
  }

  ComplexVector psi = ComplexVector::Zero(4);
  psi(1) = 1.0 / std::sqrt(2.0);
  psi(2) = -1.0 / std::sqrt(2.0);
  const DensityOperator singlet = pseudopure_state(DensityOperator::pure(psi), 1.0 / 9.0);
  const Ensemble es(quasi_from_density(singlet, Frame::tetrahedron()), 1'000'000, 4242);
  ChshSetting opt;
  opt.a = Vec3::UnitZ();
  opt.a_prime = Vec3::UnitX();
  opt.b = -(Vec3::UnitZ() + Vec3::UnitX()) / std::sqrt(2.0);
  opt.b_prime = (Vec3::UnitX() - Vec3::UnitZ()) / std::sqrt(2.0);
  const CorrelationEstimate est = chsh_estimate(es, opt);
  const double singlet_z = z_of(est.mean, est.std_error, 2.0 * std::sqrt(2.0) / 9.0);

  Circuit c(2);
  c.add("H", {0}).add("CNOT", {0, 1}).add("RY", {1}, {0.9});
  const DensityOperator rho = pseudopure_state(DensityOperator::basis(2, 0), eta(2));
  double worst_k3 = -std::numeric_limits<double>::infinity();
  std::size_t triples = 0, schedules = 0;
  for (double gamma : {0.1, 0.5, 1.0}) {
    for (double dt : {0.25, 0.5}) {
      Ensemble e(quasi_from_density(rho, Frame::tetrahedron()), 200'000, 60 + schedules);
      TrajectoryOptions opts;
      const Axis tilted = Axis::toward(Vec3(1, 0, 1));
      opts.probes = {{0, tilted}, {1, Axis::along(Vec3::UnitZ())}};
      opts.snapshot_every = dt < 0.5 ? 2 : 1;
      const Trajectory t = run_quasicontinuous(e, UpdateSchedule::back_to_back(3, 2.0, gamma, dt, 0.5), c, opts);
      ++schedules;
      const std::size_t last = t.snapshots.size();
      for (std::size_t i = 0; i < last; ++i)
        for (std::size_t j = i + 1; j < last; ++j)
          for (std::size_t k = j + 1; k < last; ++k)
            for (const TemporalProbe& p : opts.probes) {
              const LeggettGarg lg = leggett_garg(t, {{i, j, k}, p.qubit, p.axis});
              worst_k3 = std::max(worst_k3, (lg.k3 - 1.0) / lg.std_error);
              ++triples;
            }
    }
  }
  const bool pass = worst_excess <= 5.0 && singlet_z <= 5.0 && worst_k3 <= 5.0;
  return {pass, fmt("20 states max (|S|-2)/sigma %.2f; singlet S %.4f vs 2*sqrt(2)/9 at z %.2f; %zu K3 values over %zu "
                    "schedules max (K3-1)/sigma %.2f (limit 5)",
                    worst_excess, est.mean, singlet_z, triples, schedules, worst_k3)};
}

Outcome quasicontinuous_limit() {
  double worst_two = 0.0;
  std::size_t compared = 0;
  struct Case {
    std::size_t n;
    const Frame* frame;
  };
  for (const Case& c : {Case{2, &frames()[0]}, Case{3, &frames()[1]}}) {
    Circuit circuit(c.n);
    circuit.add("H", {0}).add("CNOT", {0, 1});
    if (c.n == 3) circuit.add("CNOT", {1, 2});
    const QuasiState w =
        quasi_from_density(pseudopure_state(DensityOperator::basis(c.n, 0), eta(c.n)), *c.frame);
    TrajectoryOptions opts;
    opts.specs = all_specs(c.n, pauli_axes());
    Ensemble ed(w, 1'000'000, 71);
    const Trajectory discrete = run_discrete(ed, circuit, opts);
    for (double dt : {1.0, 0.5}) {
      Ensemble eq(w, 1'000'000, 72);
      TrajectoryOptions qopts = opts;
      qopts.pulse_ends_only = true;
      const UpdateSchedule sched = UpdateSchedule::back_to_back(circuit.size(), dt, 1.0 / dt, dt);
      const Trajectory quasi = run_quasicontinuous(eq, sched, circuit, qopts);
      if (quasi.snapshots.size() != discrete.snapshots.size()) return {false, "snapshot counts differ"};
      for (std::size_t t = 0; t < quasi.snapshots.size(); ++t)
        for (std::size_t k = 0; k < opts.specs.size(); ++k) {
          worst_two = std::max(worst_two, two_sample_z(quasi.snapshots[t].correlations[k],
                                                       discrete.snapshots[t].correlations[k]));
          ++compared;
        }
    }
  }

  double worst_rate = 0.0;
  std::size_t intervals = 0;
  struct Rate {
    double gamma, dt, length;
  };
  Circuit c(2);
  c.add("H", {0}).add("CNOT", {0, 1}).add("RX", {1}, {0.4});
  const QuasiState w = quasi_from_density(pseudopure_state(DensityOperator::basis(2, 0), eta(2)), Frame::tetrahedron());
  for (const Rate& r : {Rate{0.8, 0.25, 5.0}, Rate{0.3, 0.1, 2.0}, Rate{2.0, 0.05, 1.5}, Rate{1.0, 1.0, 1.0}}) {
    Ensemble e(w, 1'000'000, 90);
    const Trajectory t = run_quasicontinuous(e, UpdateSchedule::back_to_back(c.size(), r.length, r.gamma, r.dt, 0.2), c, {});
    for (const IntervalStats& s : t.intervals) {
      worst_rate = std::max(worst_rate, z_of(s.mean_updates, s.std_error, r.gamma * s.length));
      ++intervals;
    }
  }
  const bool pass = worst_two <= 5.0 && worst_rate <= 5.0;
  return {pass, fmt("%zu two-sample comparisons at gamma*dt = 1, max |z| %.2f; %zu intervals, max |z| of mean updates "
                    "vs gamma*dt %.2f (limit 5)",
                    compared, worst_two, intervals, worst_rate)};
}

Outcome determinism_and_scale() {
  using namespace qlrhv::cli;
  const ExperimentConfig discrete = parse_config(
      "[experiment]\nnum_qubits = 3\nframe = cardinal6\nstate = ghz\nepsilon = eta\nmolecules = 300000\nseed = 17\n"
      "[bell]\nchsh = 0 2\nresolution = 12\n");
  const ExperimentConfig continuous = parse_config(
      "[experiment]\nnum_qubits = 2\nstate = singlet_pairs\nspecs = x x; z z; y 0\nmolecules = 300000\nseed = 18\n"
      "[schedule]\nmode = quasicontinuous\ngamma = 0.6\ndt = 0.2\npulse_length = 1\n[bell]\nleggett_garg = 0 x\n");
  bool identical = true;
  std::size_t bytes = 0;
  for (const ExperimentConfig* cfg : {&discrete, &continuous}) {
    std::string reference;
    for (std::size_t threads : {1, 4, 8}) {
      set_num_threads(threads);
      std::ostringstream os;
      write_csv(os, run_experiment(*cfg));
      if (threads == 1) {
        reference = os.str();
        bytes += reference.size();
      } else {
        identical = identical && os.str() == reference;
      }
    }
  }
  set_num_threads(1);

  // |0...0> at N = 12, then a random two-qubit unitary on qubits 3 and 8.
  const std::size_t n = 12;
  const Frame& f = Frame::tetrahedron();
  const QuasiState one = quasi_from_density(DensityOperator::basis(1, 0), f);
  QuasiState w = one;
  for (std::size_t r = 1; r < n; ++r) w = quasi_product(w, one);
  const ComplexMatrix u = random_unitary(2, 123);
  const TransitionMatrix t = transition_matrix(u, f, {3, 8});
  const auto start = std::chrono::steady_clock::now();
  apply_gate_in_place(w, t);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Spot check against a two-qubit oracle: z on every spectator has value 1.
  const ComplexMatrix pair = ot::kron2(projector(Vec3::UnitZ()), projector(Vec3::UnitZ()));
  const ComplexMatrix evolved = u * pair * u.adjoint();
  double spot_err = 0.0;
  for (const char* a : {"x", "y", "z"})
    for (const char* b : {"x", "z"}) {
      std::string spec_text;
      std::string pair_text;
      for (std::size_t r = 0; r < n; ++r) spec_text += r == 3 ? std::string(a) + " " : r == 8 ? std::string(b) + " " : "z ";
      pair_text = std::string(a) + " " + b;
      spot_err = std::max(spot_err, std::abs(correlation_quasi(w, parse_spec(spec_text)) -
                                             ot::correlation(evolved, parse_spec(pair_text))));
    }
  const bool pass = identical && seconds < 10.0 && w.size() == 16'777'216 && spot_err <= 1e-10;
  return {pass, fmt("CSV at 1/4/8 threads %s (%zu bytes per run set); N=12 two-qubit gate on %zu weights in %.2f s "
                    "(limit 10 s), spot-check error %.3g",
                    identical ? "byte-identical" : "DIFFERENT", bytes, w.size(), seconds, spot_err)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"frame identities", frame_identities},
      {"representation exactness", representation_exactness},
      {"dynamics exactness", dynamics_exactness},
      {"threshold claim", threshold_claim},
      {"LRHV duplicates quantum mechanics", lrhv_duplicates_qm},
      {"no Bell violation", no_bell_violation},
      {"quasicontinuous limit", quasicontinuous_limit},
      {"determinism and scale", determinism_and_scale},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
