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

#include "qlrhv/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef QLRHV_HAVE_OPENMP
#include <omp.h>
#endif

namespace qlrhv {

void set_num_threads(std::size_t n) {
#ifdef QLRHV_HAVE_OPENMP
  omp_set_num_threads(static_cast<int>(n == 0 ? 1 : n));
#else
  (void)n;
#endif
}

std::size_t num_threads() {
#ifdef QLRHV_HAVE_OPENMP
  return static_cast<std::size_t>(omp_get_max_threads());
#else
  return 1;
#endif
}

std::size_t threads_from_environment() {
  const char* value = std::getenv("QLRHV_NUM_THREADS");
  if (value == nullptr) return 0;
  try {
    const long n = std::stol(value);
    return n > 0 ? static_cast<std::size_t>(n) : 0;
  } catch (const std::exception&) {
    return 0;
  }
}

}  // namespace qlrhv
