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

// Compiled with -mavx2 for this translation unit only; callers must check
// cpu support before taking this table (see kernels.cpp).

#include "gapkit/kernels.hpp"

#if (defined(__x86_64__) || defined(_M_X64)) && defined(GAPKIT_COMPILE_AVX2)
#define GAPKIT_HAVE_AVX2_TU 1
#include <immintrin.h>
#else
#define GAPKIT_HAVE_AVX2_TU 0
#endif

namespace gapkit::kernels {

#if GAPKIT_HAVE_AVX2_TU

namespace {

// Reduce x in [0, 2k-1] mod k as min_epu8(x, x - k): when x < k the
// subtraction wraps above 127 (k <= 128), so the unsigned min picks x.
inline __m256i reduce_once(__m256i x, __m256i vk) {
  return _mm256_min_epu8(x, _mm256_sub_epi8(x, vk));
}

void add_mod_avx2(std::uint8_t* dst, const std::uint8_t* a,
                  const std::uint8_t* b, std::size_t len, std::uint8_t k) {
  const __m256i vk = _mm256_set1_epi8(char(k));
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    __m256i s = reduce_once(_mm256_add_epi8(va, vb), vk);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), s);
  }
  for (; i < len; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    dst[i] = std::uint8_t(s >= k ? s - k : s);
  }
}

void sub_mod_avx2(std::uint8_t* dst, const std::uint8_t* a,
                  const std::uint8_t* b, std::size_t len, std::uint8_t k) {
  const __m256i vk = _mm256_set1_epi8(char(k));
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // a - b + k lies in [1, 2k-1]
    __m256i d = _mm256_sub_epi8(_mm256_add_epi8(va, vk), vb);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        reduce_once(d, vk));
  }
  for (; i < len; ++i) {
    unsigned d = unsigned(a[i]) + unsigned(k) - unsigned(b[i]);
    dst[i] = std::uint8_t(d >= k ? d - k : d);
  }
}

bool ranges_differ_avx2(const std::uint8_t* a, const std::uint8_t* b,
                        std::size_t len) {
  std::size_t i = 0;
  for (; i + 32 <= len; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    if (unsigned(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb))) !=
        0xFFFFFFFFu)
      return true;
  }
  for (; i < len; ++i) {
    if (a[i] != b[i]) return true;
  }
  return false;
}

void gather_fallback(std::uint8_t* dst, const std::uint8_t* src,
                     const std::uint32_t* map, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) dst[i] = src[map[i]];
}

}  // namespace

namespace detail {
const Table* avx2_compiled() {
  static const Table table{"avx2", add_mod_avx2, sub_mod_avx2,
                           ranges_differ_avx2, gather_fallback};
  return &table;
}
}  // namespace detail

#else

namespace detail {
const Table* avx2_compiled() { return nullptr; }
}  // namespace detail

#endif

}  // namespace gapkit::kernels
