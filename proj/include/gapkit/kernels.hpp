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

#pragma once

#include <cstddef>
#include <cstdint>

namespace gapkit::kernels {

// Byte-array primitives behind every hot loop (pointwise mod-k ring ops,
// essentiality stride scans, minor gathers). Entries are residues < k with
// k <= 128, so a + b and a - b + k never leave [0, 255].
//
// dst may alias a or b; all three must have at least `len` bytes.
using BinModFn = void (*)(std::uint8_t* dst, const std::uint8_t* a,
                          const std::uint8_t* b, std::size_t len,
                          std::uint8_t k);

// True iff a[i] != b[i] for some i < len. Ranges may overlap.
using DifferFn = bool (*)(const std::uint8_t* a, const std::uint8_t* b,
                          std::size_t len);

// dst[i] = src[map[i]]; dst must not alias src.
using GatherFn = void (*)(std::uint8_t* dst, const std::uint8_t* src,
                          const std::uint32_t* map, std::size_t len);

struct Table {
  const char* name;
  BinModFn add_mod;
  BinModFn sub_mod;
  DifferFn ranges_differ;
  GatherFn gather;
};

// Portable reference implementations.
const Table& scalar();

// AVX2 implementations, or nullptr when not compiled in / not supported by
// this CPU. gather stays scalar in both tables: byte gathers are load-bound
// and vpgatherdd would read past the end of the source table.
const Table* avx2();

// The table selected once at startup: avx2() when available, else scalar().
// GAPKIT_KERNELS=scalar in the environment forces the reference kernels.
const Table& active();

}  // namespace gapkit::kernels
