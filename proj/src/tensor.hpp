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
#include <vector>

namespace qlrhv::detail {

// Contracts one mode of a dense row-major tensor viewed as [outer, din, inner]:
//   out[o, p, i] = sum_q coef(p, q) * in[o, q, i],  p < dout.
// Each output element sums q in ascending order, so results do not depend
// on the thread count.
template <class T, class Coef>
std::vector<T> mode_product(const std::vector<T>& in, std::size_t outer, std::size_t din, std::size_t inner,
                            std::size_t dout, const Coef& coef) {
  std::vector<T> out(outer * dout * inner);
  const auto blocks = static_cast<std::int64_t>(outer * dout);
#ifdef QLRHV_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (blocks * static_cast<std::int64_t>(inner * din) > 32768)
#endif
  for (std::int64_t b = 0; b < blocks; ++b) {
    const std::size_t o = static_cast<std::size_t>(b) / dout;
    const std::size_t p = static_cast<std::size_t>(b) % dout;
    T* dst = out.data() + static_cast<std::size_t>(b) * inner;
    const T* src = in.data() + o * din * inner;
    for (std::size_t i = 0; i < inner; ++i) dst[i] = T{};
    for (std::size_t q = 0; q < din; ++q) {
      const T c = coef(p, q);
      if (c == T{}) continue;
      const T* row = src + q * inner;
      for (std::size_t i = 0; i < inner; ++i) dst[i] += c * row[i];
    }
  }
  return out;
}

}  // namespace qlrhv::detail
