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
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace gapkit {

// Everything indexes k-ary tuples positionally: tuple (a1,...,an) sits at
// m = a1*k^(n-1) + a2*k^(n-2) + ... + an, i.e. the first variable is the
// most significant digit. Variable positions are 1-based on this surface.

inline constexpr unsigned kMaxBase = 128;          // keeps byte sums < 256
inline constexpr std::size_t kMaxTableSize = std::size_t(1) << 28;

// k^n, rejecting k/n combinations whose table would not fit kMaxTableSize.
std::size_t checked_pow(unsigned k, unsigned n);

std::size_t tuple_to_index(std::span<const std::uint8_t> t, unsigned k);
std::vector<std::uint8_t> index_to_tuple(std::size_t m, unsigned k,
                                         unsigned n);

// True iff two entries coincide.
bool has_repetition(std::span<const std::uint8_t> t);

// Values occurring an odd number of times, ascending.
std::vector<std::uint8_t> oddsupp(std::span<const std::uint8_t> t);

// A subset of the variable positions {1..n}.
class VarSet {
 public:
  VarSet() = default;
  explicit VarSet(unsigned n, std::uint64_t bits = 0);
  static VarSet full(unsigned n);

  unsigned universe() const { return n_; }
  bool contains(unsigned i) const;
  void insert(unsigned i);
  unsigned size() const;
  VarSet complement() const;
  std::vector<unsigned> members() const;
  std::uint64_t bits() const { return bits_; }

  friend bool operator==(const VarSet&, const VarSet&) = default;

 private:
  unsigned n_ = 0;
  std::uint64_t bits_ = 0;
};

// A total function K^n -> K, K = Z_k, stored densely in tuple-index order.
// Immutable after construction; operations below are pure.
class KTable {
 public:
  KTable(unsigned k, unsigned n);  // zero table
  KTable(unsigned k, unsigned n, std::vector<std::uint8_t> values);
  static KTable constant(unsigned k, unsigned n, std::uint8_t c);

  unsigned k() const { return k_; }
  unsigned n() const { return n_; }
  std::size_t size() const { return values_.size(); }
  std::uint8_t operator[](std::size_t m) const { return values_[m]; }
  std::uint8_t at(std::span<const std::uint8_t> tuple) const;
  std::span<const std::uint8_t> values() const { return values_; }
  const std::uint8_t* data() const { return values_.data(); }
  std::size_t stride(unsigned i) const;  // k^(n-i)
  bool is_constant() const;

  friend bool operator==(const KTable&, const KTable&) = default;

 private:
  unsigned k_;
  unsigned n_;
  std::vector<std::uint8_t> values_;
};

struct KTableHash {
  std::size_t operator()(const KTable& f) const;
};

bool is_essential(const KTable& f, unsigned i);
VarSet essential_set(const KTable& f);
inline unsigned ess(const KTable& f) { return essential_set(f).size(); }

// f with x_i substituted by x_j; arity is preserved and x_i turns fictive.
KTable identify(const KTable& f, unsigned i, unsigned j);

// Min(f) as pair-tagged records: all ordered (i,j) with both variables
// essential. Callers wanting the plain function set deduplicate via
// minor_function_set.
struct MinorRecord {
  unsigned i;
  unsigned j;
  KTable table;
};
std::vector<MinorRecord> nontrivial_minors(const KTable& f);
std::vector<KTable> minor_function_set(const KTable& f);

KTable ring_add(const KTable& f, const KTable& g);
KTable ring_sub(const KTable& f, const KTable& g);

bool is_symmetric_pair(const KTable& f, unsigned i, unsigned j);
// Invariance under every transposition of the essential positions,
// established from adjacent transpositions of that set.
bool is_totally_symmetric(const KTable& f);

// If f is constant on every oddsupp fiber, the induced map on the realized
// subsets of K (keys are ascending value lists); otherwise nullopt.
std::optional<std::map<std::vector<std::uint8_t>, std::uint8_t>>
oddsupp_determined(const KTable& f);

namespace detail {

// Increments a k-ary digit vector (last digit fastest); false on wrap-around.
bool odometer_advance(std::uint8_t* digits, std::size_t len, unsigned k);

// Raw-buffer core shared with the census scanner; v has k^n entries.
bool digit_matters(const std::uint8_t* v, std::size_t len, std::size_t stride,
                   unsigned k);
std::uint64_t ess_mask(const std::uint8_t* v, unsigned k, unsigned n);

// map[m] = index of the tuple with its i-th entry replaced by the j-th.
void build_identify_map(unsigned k, unsigned n, unsigned i, unsigned j,
                        std::uint32_t* map);

}  // namespace detail

}  // namespace gapkit
