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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlrhv/bell.hpp"
#include "qlrhv/circuit.hpp"
#include "qlrhv/error.hpp"
#include "qlrhv/frames.hpp"
#include "qlrhv/lrhv.hpp"
#include "qlrhv/measurement.hpp"
#include "qlrhv/nmr.hpp"
#include "qlrhv/oracle.hpp"
#include "qlrhv/parallel.hpp"
#include "qlrhv/quasi.hpp"

namespace py = pybind11;
using namespace qlrhv;

namespace {

py::array_t<double> weights_array(const QuasiState& w) {
  const auto span = w.weights();
  return py::array_t<double>(static_cast<py::ssize_t>(span.size()), span.data());
}

MeasurementSpec to_spec(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) return parse_spec(spec.cast<std::string>());
  return spec.cast<MeasurementSpec>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quasidistributions, density-operator oracle, and LRHV ensembles for pseudopure qubit states";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<FrameInvalid>(m, "FrameInvalid", base.ptr());
  py::register_exception<BadDensityOperator>(m, "BadDensityOperator", base.ptr());
  py::register_exception<BadUnitary>(m, "BadUnitary", base.ptr());
  py::register_exception<BadTargets>(m, "BadTargets", base.ptr());
  py::register_exception<BadEpsilon>(m, "BadEpsilon", base.ptr());
  py::register_exception<ShapeError>(m, "ShapeError", base.ptr());
  py::register_exception<NegativeQuasiWeight>(m, "NegativeQuasiWeight", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Frame>(m, "Frame")
      .def_static("tetrahedron", &Frame::tetrahedron)
      .def_static("cardinal6", &Frame::cardinal6)
      .def_static("custom", &Frame::custom, py::arg("vectors"), py::arg("label") = "custom")
      .def_static("builtin", &builtin_frame)
      .def_property_readonly("label", &Frame::label)
      .def_property_readonly("vectors", [](const Frame& f) { return std::vector<Vec3>(f.vectors().begin(), f.vectors().end()); })
      .def("__len__", &Frame::size)
      .def("__repr__", [](const Frame& f) { return "Frame('" + f.label() + "', " + std::to_string(f.size()) + ")"; });

  py::class_<MeasurementSpec>(m, "MeasurementSpec")
      .def(py::init([](const std::string& text) { return parse_spec(text); }))
      .def_property_readonly("label", &MeasurementSpec::label)
      .def("__len__", &MeasurementSpec::size)
      .def("__repr__", [](const MeasurementSpec& s) { return "MeasurementSpec('" + s.label() + "')"; });
  m.def("all_specs", [](std::size_t n) { return all_specs(n, pauli_axes()); }, py::arg("num_qubits"),
        "Every spec over {x, y, z, 0}^N.");

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init<ComplexMatrix, std::size_t>(), py::arg("matrix"), py::arg("num_qubits"))
      .def_static("maximally_mixed", &DensityOperator::maximally_mixed)
      .def_static("pure", &DensityOperator::pure)
      .def_static("basis", &DensityOperator::basis)
      .def_property_readonly("matrix", &DensityOperator::matrix)
      .def_property_readonly("num_qubits", &DensityOperator::num_qubits)
      .def("eigenvalues", &DensityOperator::eigenvalues)
      .def("purity", &DensityOperator::purity);
  m.def("pseudopure_state", &pseudopure_state, py::arg("rho1"), py::arg("epsilon"));
  m.def("apply_unitary", &apply_unitary, py::arg("rho"), py::arg("u"), py::arg("targets"));
  m.def("random_state", &random_state, py::arg("num_qubits"), py::arg("rank"), py::arg("seed"));
  m.def("random_unitary", &random_unitary, py::arg("num_qubits"), py::arg("seed"));
  m.def(
      "correlation_trace", [](const DensityOperator& rho, const py::object& spec) {
        return correlation_trace(rho, to_spec(spec));
      },
      py::arg("rho"), py::arg("spec"));

  py::class_<Circuit>(m, "Circuit")
      .def(py::init<std::size_t>())
      .def("add", py::overload_cast<const std::string&, std::vector<std::size_t>, std::vector<double>>(&Circuit::add),
           py::arg("name"), py::arg("targets"), py::arg("params") = std::vector<double>{}, py::return_value_policy::reference)
      .def("add_matrix", py::overload_cast<std::string, ComplexMatrix, std::vector<std::size_t>>(&Circuit::add),
           py::arg("name"), py::arg("matrix"), py::arg("targets"), py::return_value_policy::reference)
      .def("__len__", &Circuit::size)
      .def_property_readonly("num_qubits", &Circuit::num_qubits);
  m.def("gate", &gates::named, py::arg("name"), py::arg("params") = std::vector<double>{});

  py::class_<QuasiState>(m, "QuasiState")
      .def(py::init([](const Frame& f, std::size_t n, std::vector<double> w) { return QuasiState(f, n, std::move(w)); }))
      .def_static("uniform", &QuasiState::uniform)
      .def_property_readonly("frame", &QuasiState::frame)
      .def_property_readonly("num_qubits", &QuasiState::num_qubits)
      .def_property_readonly("weights", &weights_array)
      .def("total", &QuasiState::total)
      .def("min_weight", &QuasiState::min_weight)
      .def("argmin", &QuasiState::argmin)
      .def("__len__", &QuasiState::size);
  m.def("quasi_from_density", &quasi_from_density, py::arg("rho"), py::arg("frame"));
  m.def("density_from_quasi", &density_from_quasi, py::arg("w"));
  m.def(
      "correlation_quasi", [](const QuasiState& w, const py::object& spec) { return correlation_quasi(w, to_spec(spec)); },
      py::arg("w"), py::arg("spec"));
  m.def("tuple_digits", &tuple_digits, py::arg("index"), py::arg("num_qubits"), py::arg("frame_size"));
  m.def("min_quasi_bound", &min_quasi_bound, py::arg("num_qubits"), py::arg("frame_size"));
  m.def("canonicalize", [](const QuasiState& w) { return qlrhv::canonicalize(w); }, py::arg("w"));
  m.def("quasi_product", &quasi_product, py::arg("a"), py::arg("b"));
  m.def("mix_with_uniform", &mix_with_uniform, py::arg("w1"), py::arg("epsilon"));

  py::class_<TransitionMatrix>(m, "TransitionMatrix")
      .def_readonly("entries", &TransitionMatrix::entries)
      .def_readonly("targets", &TransitionMatrix::targets)
      .def("column_sum_error", &TransitionMatrix::column_sum_error);
  m.def("transition_matrix",
        py::overload_cast<const ComplexMatrix&, const Frame&, std::vector<std::size_t>>(&transition_matrix),
        py::arg("u"), py::arg("frame"), py::arg("targets"));
  m.def("apply_gate", &apply_gate, py::arg("w"), py::arg("t"));
  m.def("evolve", py::overload_cast<const QuasiState&, const Circuit&>(&evolve), py::arg("w"), py::arg("circuit"));
  m.def("evolve_density", py::overload_cast<const DensityOperator&, const Circuit&>(&evolve), py::arg("rho"),
        py::arg("circuit"));

  py::enum_<Regime>(m, "Regime")
      .value("UNENTANGLEABLE", Regime::unentangleable)
      .value("OPEN_REGION", Regime::open_region)
      .value("ENTANGLED_STATES_EXIST", Regime::entangled_states_exist);
  py::class_<Thresholds>(m, "Thresholds")
      .def_readonly("epsilon", &Thresholds::epsilon)
      .def_readonly("eta", &Thresholds::eta)
      .def_readonly("eta_prime", &Thresholds::eta_prime)
      .def_readonly("regime", &Thresholds::regime);
  m.def("eta", &eta, py::arg("num_qubits"));
  m.def("eta_prime", &eta_prime, py::arg("num_qubits"));
  m.def("thresholds", &thresholds, py::arg("epsilon"), py::arg("num_qubits"));
  m.def(
      "epsilon_pseudopure", [](double alpha, std::size_t n) { return epsilon_pseudopure({alpha, n}); },
      py::arg("alpha"), py::arg("num_qubits"));
  m.def("largest_unentangleable", &largest_unentangleable, py::arg("alpha"), py::arg("max_qubits") = 64);
  m.def("assert_lrhv_admissible", &assert_lrhv_admissible, py::arg("w"));

  py::class_<CorrelationEstimate>(m, "CorrelationEstimate")
      .def_readonly("mean", &CorrelationEstimate::mean)
      .def_readonly("std_error", &CorrelationEstimate::std_error)
      .def_readonly("samples", &CorrelationEstimate::samples);
  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init<const QuasiState&, std::size_t, std::uint64_t>(), py::arg("w"), py::arg("molecules"),
           py::arg("seed"))
      .def("__len__", &Ensemble::size)
      .def("tuple_of", &Ensemble::tuple_of)
      .def("update", [](Ensemble& e, const TransitionMatrix& t) { update_discrete(e, t); }, py::arg("t"))
      .def(
          "estimate", [](const Ensemble& e, const py::object& spec) { return estimate_correlation(e, to_spec(spec)); },
          py::arg("spec"));

  py::class_<ChshScan>(m, "ChshScan")
      .def_readonly("max_abs_s", &ChshScan::max_abs_s)
      .def_readonly("s", &ChshScan::s)
      .def_readonly("std_error", &ChshScan::std_error);
  m.def(
      "scan_max_chsh_oracle",
      [](const DensityOperator& rho, std::size_t r, std::size_t s, std::size_t resolution) {
        return scan_max_chsh(oracle_correlator(rho, r, s), r, s, resolution);
      },
      py::arg("rho"), py::arg("r"), py::arg("s"), py::arg("resolution") = 32);
  m.def(
      "scan_max_chsh_lrhv",
      [](const Ensemble& e, std::size_t r, std::size_t s, std::size_t resolution) {
        return scan_max_chsh(e, r, s, resolution);
      },
      py::arg("ensemble"), py::arg("r"), py::arg("s"), py::arg("resolution") = 32);

  m.def("set_num_threads", &set_num_threads, py::arg("n"));
  m.def("num_threads", &num_threads);
}
