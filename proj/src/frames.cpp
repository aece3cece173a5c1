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

#include "qlrhv/frames.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "qlrhv/error.hpp"

namespace qlrhv {

double ValidationReport::worst() const {
  return std::max({max_residual_zero_sum, max_residual_isotropy, max_norm_error});
}

bool FrameGram::is_consistent(double tol) const {
  if (dot.rows() != dot.cols()) return false;
  for (Eigen::Index i = 0; i < dot.rows(); ++i) {
    if (std::abs(dot(i, i) - 1.0) > tol) return false;
    for (Eigen::Index j = 0; j < i; ++j) {
      if (std::abs(dot(i, j) - dot(j, i)) > tol) return false;
    }
  }
  return true;
}

Frame Frame::tetrahedron() {
  const double s = 1.0 / std::sqrt(3.0);
  return Frame({Vec3(s, s, s), Vec3(s, -s, -s), Vec3(-s, s, -s), Vec3(-s, -s, s)}, "tetrahedron",
               FrameKind::tetrahedron);
}

Frame Frame::cardinal6() {
  return Frame({Vec3::UnitX(), -Vec3::UnitX(), Vec3::UnitY(), -Vec3::UnitY(), Vec3::UnitZ(), -Vec3::UnitZ()},
               "cardinal6", FrameKind::cardinal6);
}

Frame Frame::custom(std::vector<Vec3> vectors, std::string label) {
  const ValidationReport report = validate_frame(vectors);
  if (report.max_norm_error > kAcceptTolerance) throw FrameInvalid("unit norm", report.max_norm_error);
  if (report.max_residual_zero_sum > kAcceptTolerance)
    throw FrameInvalid("zero-sum condition", report.max_residual_zero_sum);
  if (report.max_residual_isotropy > kAcceptTolerance)
    throw FrameInvalid("isotropy condition", report.max_residual_isotropy);
  // Fewer than four vectors cannot satisfy both conditions at once.
  if (vectors.size() < 4) throw FrameInvalid("size >= 4", static_cast<double>(4 - vectors.size()));
  if (vectors.size() > kMaxSize) throw FrameInvalid("size <= 65535", static_cast<double>(vectors.size()));
  if (label == "tetrahedron" || label == "cardinal6") label = "custom";
  return Frame(std::move(vectors), std::move(label), FrameKind::custom);
}

bool operator==(const Frame& a, const Frame& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

Frame build_frame(FrameKind kind, std::span<const Vec3> vectors) {
  switch (kind) {
    case FrameKind::tetrahedron:
      return Frame::tetrahedron();
    case FrameKind::cardinal6:
      return Frame::cardinal6();
    case FrameKind::custom:
      break;
  }
  return Frame::custom(std::vector<Vec3>(vectors.begin(), vectors.end()));
}

ValidationReport validate_frame(std::span<const Vec3> vectors) {
  ValidationReport report;
  if (vectors.empty()) {
    report.max_residual_isotropy = 1.0 / 3.0;
    return report;
  }
  Vec3 sum = Vec3::Zero();
  Eigen::Matrix3d second = Eigen::Matrix3d::Zero();
  for (const Vec3& n : vectors) {
    sum += n;
    second += n * n.transpose();
    report.max_norm_error = std::max(report.max_norm_error, std::abs(n.norm() - 1.0));
  }
  second /= static_cast<double>(vectors.size());
  report.max_residual_zero_sum = sum.cwiseAbs().maxCoeff();
  report.max_residual_isotropy = (second - Eigen::Matrix3d::Identity() / 3.0).cwiseAbs().maxCoeff();
  return report;
}

ValidationReport validate_frame(const Frame& frame) { return validate_frame(frame.vectors()); }

FrameGram frame_gram(const Frame& frame) {
  const auto n = static_cast<Eigen::Index>(frame.size());
  FrameGram gram{RealMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) gram.dot(i, j) = frame[i].dot(frame[j]);
  }
  return gram;
}

Frame builtin_frame(const std::string& label) {
  if (label == "tetrahedron") return Frame::tetrahedron();
  if (label == "cardinal6") return Frame::cardinal6();
  throw ParseError("unknown built-in frame '" + label + "'");
}

Frame parse_frame(const std::string& text, std::string label) {
  std::istringstream in(text);
  std::string line;
  std::vector<Vec3> vectors;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    Vec3 v;
    if (!(fields >> v.x() >> v.y() >> v.z())) throw ParseError("expected three decimal components", lineno);
    std::string extra;
    if (fields >> extra) throw ParseError("unexpected trailing token '" + extra + "'", lineno);
    vectors.push_back(v);
  }
  return Frame::custom(std::move(vectors), std::move(label));
}

Frame load_frame_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open frame file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_frame(buffer.str(), path.stem().string());
}

}  // namespace qlrhv
