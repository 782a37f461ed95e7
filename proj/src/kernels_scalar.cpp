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

namespace gapkit::kernels {

namespace {

void add_mod_scalar(std::uint8_t* dst, const std::uint8_t* a,
                    const std::uint8_t* b, std::size_t len, std::uint8_t k) {
  for (std::size_t i = 0; i < len; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    dst[i] = std::uint8_t(s >= k ? s - k : s);
  }
}

void sub_mod_scalar(std::uint8_t* dst, const std::uint8_t* a,
                    const std::uint8_t* b, std::size_t len, std::uint8_t k) {
  for (std::size_t i = 0; i < len; ++i) {
    unsigned d = unsigned(a[i]) + unsigned(k) - unsigned(b[i]);
    dst[i] = std::uint8_t(d >= k ? d - k : d);
  }
}

bool ranges_differ_scalar(const std::uint8_t* a, const std::uint8_t* b,
                          std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] != b[i]) return true;
  }
  return false;
}

void gather_scalar(std::uint8_t* dst, const std::uint8_t* src,
                   const std::uint32_t* map, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] = src[map[i]];
}

}  // namespace

const Table& scalar() {
  static const Table table{"scalar", add_mod_scalar, sub_mod_scalar,
                           ranges_differ_scalar, gather_scalar};
  return table;
}

}  // namespace gapkit::kernels
