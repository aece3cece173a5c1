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
#include <stdexcept>
#include <string>

namespace qlrhv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A direction set violates the zero-sum, isotropy, or unit-norm condition.
class FrameInvalid : public Error {
 public:
  FrameInvalid(std::string condition, double residual);

  const std::string& condition() const noexcept { return condition_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string condition_;
  double residual_;
};

class BadDirectionIndex : public Error {
 public:
  using Error::Error;
};

class BadDensityOperator : public Error {
 public:
  using Error::Error;
};

class BadUnitary : public Error {
 public:
  using Error::Error;
};

class BadTargets : public Error {
 public:
  using Error::Error;
};

class BadEpsilon : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A quasidistribution component is too negative to serve as a probability.
class NegativeQuasiWeight : public Error {
 public:
  NegativeQuasiWeight(std::size_t index, double value, std::string detail = {});

  std::size_t index() const noexcept { return index_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t index_;
  double value_;
};

class BadTrajectory : public Error {
 public:
  using Error::Error;
};

class BadSchedule : public Error {
 public:
  using Error::Error;
};

/// Malformed text or binary input. `line()` is 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line = 0);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qlrhv
