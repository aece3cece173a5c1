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

namespace qlrhv {

/// Worker threads used by the parallel kernels. Results never depend on it:
/// every kernel writes disjoint outputs or reduces in a fixed block order.
void set_num_threads(std::size_t n);
std::size_t num_threads();

/// Reads QLRHV_NUM_THREADS; returns 0 when unset or invalid.
std::size_t threads_from_environment();

}  // namespace qlrhv
