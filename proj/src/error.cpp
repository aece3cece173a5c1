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

#include "qlrhv/error.hpp"

#include <sstream>

namespace qlrhv {

namespace {

std::string frame_message(const std::string& condition, double residual) {
  std::ostringstream os;
  os.precision(6);
  os << "invalid frame: " << condition << " violated (residual " << residual << ")";
  return os.str();
}

std::string negative_message(std::size_t index, double value, const std::string& detail) {
  std::ostringstream os;
  os.precision(17);
  os << "negative quasi weight " << value << " at tuple index " << index;
  if (!detail.empty()) os << "; " << detail;
  return os.str();
}

std::string parse_message(const std::string& message, std::size_t line) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

}  // namespace

FrameInvalid::FrameInvalid(std::string condition, double residual)
    : Error(frame_message(condition, residual)), condition_(std::move(condition)), residual_(residual) {}

NegativeQuasiWeight::NegativeQuasiWeight(std::size_t index, double value, std::string detail)
    : Error(negative_message(index, value, detail)), index_(index), value_(value) {}

ParseError::ParseError(const std::string& message, std::size_t line)
    : Error(parse_message(message, line)), line_(line) {}

}  // namespace qlrhv
