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

#include "qlrhv/measurement.hpp"

#include <cmath>
#include <sstream>

#include "qlrhv/error.hpp"

namespace qlrhv {

Axis Axis::along(const Vec3& direction) {
  if (std::abs(direction.norm() - 1.0) > kNormTolerance) {
    throw ShapeError("measurement axis must be a unit vector");
  }
  return Axis(direction);
}

Axis Axis::toward(const Vec3& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw ShapeError("cannot normalize a zero axis vector");
  return Axis(v / norm);
}

std::string Axis::label() const {
  if (zero_) return "0";
  for (int k = 0; k < 3; ++k) {
    const char name = static_cast<char>('x' + k);
    if (direction_ == Vec3::Unit(k)) return std::string(1, name);
    if (direction_ == -Vec3::Unit(k)) return std::string("-") + name;
  }
  std::ostringstream os;
  os.precision(17);
  os << '[' << direction_.x() << ',' << direction_.y() << ',' << direction_.z() << ']';
  return os.str();
}

Axis parse_axis(std::string_view token) {
  if (token == "0" || token == "zero" || token == "ZERO") return Axis::zero();
  bool negative = false;
  std::string_view body = token;
  if (!body.empty() && (body.front() == '-' || body.front() == '+') && body.size() == 2) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body.size() == 1 && body[0] >= 'x' && body[0] <= 'z') {
    const Vec3 unit = Vec3::Unit(body[0] - 'x');
    return Axis::along(negative ? Vec3(-unit) : unit);
  }
  if (token.size() >= 2 && token.front() == '[' && token.back() == ']') {
    std::string inner(token.substr(1, token.size() - 2));
    for (char& c : inner) {
      if (c == ',') c = ' ';
    }
    std::istringstream in(inner);
    Vec3 v;
    std::string extra;
    if (!(in >> v.x() >> v.y() >> v.z()) || (in >> extra)) {
      throw ParseError("bad axis vector '" + std::string(token) + "'");
    }
    return Axis::toward(v);
  }
  throw ParseError("bad axis token '" + std::string(token) + "'");
}

bool MeasurementSpec::all_zero() const {
  for (const Axis& a : axes) {
    if (!a.is_zero()) return false;
  }
  return true;
}

std::string MeasurementSpec::label() const {
  std::string out;
  for (std::size_t r = 0; r < axes.size(); ++r) {
    if (r > 0) out += ' ';
    out += axes[r].label();
  }
  return out;
}

MeasurementSpec parse_spec(std::string_view text) {
  MeasurementSpec spec;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) spec.axes.push_back(parse_axis(token));
  if (spec.axes.empty()) throw ParseError("empty measurement spec");
  return spec;
}

std::vector<MeasurementSpec> all_specs(std::size_t num_qubits, const std::vector<Axis>& choices) {
  std::vector<MeasurementSpec> out;
  if (choices.empty()) return out;
  const std::size_t count = ipow(choices.size(), num_qubits);
  out.reserve(count);
  for (std::size_t code = 0; code < count; ++code) {
    MeasurementSpec spec;
    spec.axes.resize(num_qubits, Axis::zero());
    std::size_t rest = code;
    for (std::size_t r = num_qubits; r-- > 0;) {
      spec.axes[r] = choices[rest % choices.size()];
      rest /= choices.size();
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<Axis> pauli_axes() {
  return {Axis::along(Vec3::UnitX()), Axis::along(Vec3::UnitY()), Axis::along(Vec3::UnitZ()), Axis::zero()};
}

}  // namespace qlrhv
