// Copyright 2026 The gapkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gapkit/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gapkit::kernels {

namespace detail {
const Table* avx2_compiled();  // defined in kernels_avx2.cpp
}

const Table* avx2() {
#if (defined(__x86_64__) || defined(_M_X64)) && \
    (defined(__GNUC__) || defined(__clang__))
  if (__builtin_cpu_supports("avx2")) return detail::avx2_compiled();
#endif
  return nullptr;
}

const Table& active() {
  static const Table& chosen = []() -> const Table& {
    const char* forced = std::getenv("GAPKIT_KERNELS");
    if (forced != nullptr && std::strcmp(forced, "scalar") == 0)
      return scalar();
    if (const Table* t = avx2()) return *t;
    return scalar();
  }();
  return chosen;
}

}  // namespace gapkit::kernels
