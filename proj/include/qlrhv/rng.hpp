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

#include <array>
#include <cstdint>

namespace qlrhv {

/**
 * Philox4x32-10 counter-based generator (Salmon et al., SC'11).
 *
 * A draw is a pure function of (key, counter), so any molecule's stream can
 * be evaluated independently of every other, in any order, on any thread.
 */
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Counter operator()(Counter ctr) const {
    Key key = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

  Key key_;
};

/// Stream tags separating independent uses of the same molecule counter.
enum class RngStream : std::uint32_t { resample = 0, decision = 1, measurement = 2 };

/// Uniform doubles addressed by (seed, stream, molecule, event, draw).
class MoleculeRng {
 public:
  explicit MoleculeRng(std::uint64_t seed) : philox_(seed) {}

  /// Two independent uniforms in [0, 1) with 53-bit resolution.
  std::array<double, 2> uniform2(RngStream stream, std::uint64_t molecule, std::uint32_t event,
                                 std::uint32_t draw) const {
    const auto out = philox_({static_cast<std::uint32_t>(molecule), static_cast<std::uint32_t>(molecule >> 32),
                              event, (static_cast<std::uint32_t>(stream) << 24) | (draw & 0xFFFFFFU)});
    return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
  }

 private:
  static double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
    return static_cast<double>(bits) * 0x1.0p-53;
  }

  Philox4x32 philox_;
};

}  // namespace qlrhv
