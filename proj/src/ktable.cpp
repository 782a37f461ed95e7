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

#include "gapkit/ktable.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <stdexcept>
#include <string>

#include "gapkit/kernels.hpp"

namespace gapkit {

namespace {

[[noreturn]] void bad_arg(const std::string& msg) {
  throw std::invalid_argument(msg);
}

void check_base(unsigned k) {
  if (k < 2 || k > kMaxBase)
    bad_arg("base k must be in 2.." + std::to_string(kMaxBase) + ", got " +
            std::to_string(k));
}

void check_position(unsigned i, unsigned n) {
  if (i < 1 || i > n)
    bad_arg("variable position " + std::to_string(i) + " out of range 1.." +
            std::to_string(n));
}

}  // namespace

namespace detail {

bool odometer_advance(std::uint8_t* digits, std::size_t len, unsigned k) {
  for (std::size_t pos = len; pos-- > 0;) {
    if (unsigned(digits[pos]) + 1 < k) {
      ++digits[pos];
      return true;
    }
    digits[pos] = 0;
  }
  return false;
}

}  // namespace detail

namespace {

inline void odometer_step(std::uint8_t* digits, unsigned n, unsigned k) {
  detail::odometer_advance(digits, n, k);
}

}  // namespace

std::size_t checked_pow(unsigned k, unsigned n) {
  check_base(k);
  std::size_t r = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (r > kMaxTableSize / k)
      bad_arg("table of " + std::to_string(k) + "^" + std::to_string(n) +
              " entries exceeds the supported size");
    r *= k;
  }
  return r;
}

std::size_t tuple_to_index(std::span<const std::uint8_t> t, unsigned k) {
  check_base(k);
  std::size_t m = 0;
  for (std::uint8_t e : t) {
    if (e >= k)
      bad_arg("tuple entry " + std::to_string(e) + " not below k=" +
              std::to_string(k));
    m = m * k + e;
  }
  return m;
}

std::vector<std::uint8_t> index_to_tuple(std::size_t m, unsigned k,
                                         unsigned n) {
  std::size_t len = checked_pow(k, n);
  if (m >= len)
    bad_arg("index " + std::to_string(m) + " not below k^n=" +
            std::to_string(len));
  std::vector<std::uint8_t> t(n);
  for (unsigned pos = n; pos-- > 0;) {
    t[pos] = std::uint8_t(m % k);
    m /= k;
  }
  return t;
}

bool has_repetition(std::span<const std::uint8_t> t) {
  std::array<bool, 256> seen{};
  for (std::uint8_t e : t) {
    if (seen[e]) return true;
    seen[e] = true;
  }
  return false;
}

std::vector<std::uint8_t> oddsupp(std::span<const std::uint8_t> t) {
  std::array<unsigned, 256> count{};
  for (std::uint8_t e : t) ++count[e];
  std::vector<std::uint8_t> out;
  for (unsigned v = 0; v < 256; ++v)
    if (count[v] % 2 == 1) out.push_back(std::uint8_t(v));
  return out;
}

VarSet::VarSet(unsigned n, std::uint64_t bits) : n_(n), bits_(bits) {
  if (n > 64) bad_arg("VarSet universe too large");
  if (n < 64 && (bits >> n) != 0) bad_arg("VarSet member above universe");
}

VarSet VarSet::full(unsigned n) {
  return VarSet(n, n == 64 ? ~std::uint64_t(0)
                           : (std::uint64_t(1) << n) - 1);
}

bool VarSet::contains(unsigned i) const {
  check_position(i, n_);
  return (bits_ >> (i - 1)) & 1;
}

void VarSet::insert(unsigned i) {
  check_position(i, n_);
  bits_ |= std::uint64_t(1) << (i - 1);
}

unsigned VarSet::size() const { return unsigned(std::popcount(bits_)); }

VarSet VarSet::complement() const {
  return VarSet(n_, VarSet::full(n_).bits_ & ~bits_);
}

std::vector<unsigned> VarSet::members() const {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= n_; ++i)
    if ((bits_ >> (i - 1)) & 1) out.push_back(i);
  return out;
}

KTable::KTable(unsigned k, unsigned n)
    : k_(k), n_(n), values_(checked_pow(k, n), 0) {}

KTable::KTable(unsigned k, unsigned n, std::vector<std::uint8_t> values)
    : k_(k), n_(n), values_(std::move(values)) {
  std::size_t len = checked_pow(k, n);
  if (values_.size() != len)
    bad_arg("expected " + std::to_string(len) + " values, got " +
            std::to_string(values_.size()));
  for (std::uint8_t v : values_)
    if (v >= k)
      bad_arg("table value " + std::to_string(v) + " not below k=" +
              std::to_string(k));
}

KTable KTable::constant(unsigned k, unsigned n, std::uint8_t c) {
  std::size_t len = checked_pow(k, n);
  if (c >= k) bad_arg("constant not below k");
  return KTable(k, n, std::vector<std::uint8_t>(len, c));
}

std::uint8_t KTable::at(std::span<const std::uint8_t> tuple) const {
  if (tuple.size() != n_) bad_arg("tuple arity mismatch");
  return values_[tuple_to_index(tuple, k_)];
}

std::size_t KTable::stride(unsigned i) const {
  check_position(i, n_);
  std::size_t s = 1;
  for (unsigned t = 0; t < n_ - i; ++t) s *= k_;
  return s;
}

bool KTable::is_constant() const {
  return values_.size() < 2 ||
         !kernels::active().ranges_differ(values_.data(), values_.data() + 1,
                                          values_.size() - 1);
}

std::size_t KTableHash::operator()(const KTable& f) const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  for (unsigned shift = 0; shift < 32; shift += 8) mix(f.k() >> shift);
  for (unsigned shift = 0; shift < 32; shift += 8) mix(f.n() >> shift);
  for (std::uint8_t v : f.values()) mix(v);
  return std::size_t(h);
}

namespace detail {

bool digit_matters(const std::uint8_t* v, std::size_t len, std::size_t stride,
                   unsigned k) {
  // Adjacent digit values compared blockwise: within each superblock of
  // stride*k entries, entry m and m+stride differ in that digit only.
  const auto differ = kernels::active().ranges_differ;
  const std::size_t superblock = stride * k;
  const std::size_t span = stride * (k - 1);
  for (std::size_t base = 0; base < len; base += superblock)
    if (differ(v + base, v + base + stride, span)) return true;
  return false;
}

std::uint64_t ess_mask(const std::uint8_t* v, unsigned k, unsigned n) {
  std::uint64_t mask = 0;
  std::size_t stride = 1;
  std::size_t len = 1;
  for (unsigned i = 0; i < n; ++i) len *= k;
  for (unsigned i = n; i >= 1; --i) {
    if (digit_matters(v, len, stride, k))
      mask |= std::uint64_t(1) << (i - 1);
    stride *= k;
  }
  return mask;
}

void build_identify_map(unsigned k, unsigned n, unsigned i, unsigned j,
                        std::uint32_t* map) {
  const std::size_t len = checked_pow(k, n);
  std::size_t stride_i = 1;
  for (unsigned t = 0; t < n - i; ++t) stride_i *= k;
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t m = 0; m < len; ++m) {
    std::ptrdiff_t shift =
        (std::ptrdiff_t(digits[j - 1]) - std::ptrdiff_t(digits[i - 1])) *
        std::ptrdiff_t(stride_i);
    map[m] = std::uint32_t(std::ptrdiff_t(m) + shift);
    odometer_step(digits.data(), n, k);
  }
}

}  // namespace detail

bool is_essential(const KTable& f, unsigned i) {
  check_position(i, f.n());
  return detail::digit_matters(f.data(), f.size(), f.stride(i), f.k());
}

VarSet essential_set(const KTable& f) {
  return VarSet(f.n(), detail::ess_mask(f.data(), f.k(), f.n()));
}

KTable identify(const KTable& f, unsigned i, unsigned j) {
  check_position(i, f.n());
  check_position(j, f.n());
  if (i == j) bad_arg("identification needs two distinct positions");
  const std::size_t len = f.size();
  const std::size_t stride_i = f.stride(i);
  std::vector<std::uint8_t> out(len);
  std::vector<std::uint8_t> digits(f.n(), 0);
  const std::uint8_t* src = f.data();
  for (std::size_t m = 0; m < len; ++m) {
    std::ptrdiff_t shift =
        (std::ptrdiff_t(digits[j - 1]) - std::ptrdiff_t(digits[i - 1])) *
        std::ptrdiff_t(stride_i);
    out[m] = src[std::ptrdiff_t(m) + shift];
    odometer_step(digits.data(), f.n(), f.k());
  }
  return KTable(f.k(), f.n(), std::move(out));
}

std::vector<MinorRecord> nontrivial_minors(const KTable& f) {
  std::vector<MinorRecord> out;
  const VarSet essentials = essential_set(f);
  const auto vars = essentials.members();
  for (unsigned i : vars)
    for (unsigned j : vars) {
      if (i == j) continue;
      out.push_back(MinorRecord{i, j, identify(f, i, j)});
    }
  return out;
}

std::vector<KTable> minor_function_set(const KTable& f) {
  std::vector<KTable> out;
  for (auto& rec : nontrivial_minors(f))
    if (std::find(out.begin(), out.end(), rec.table) == out.end())
      out.push_back(rec.table);
  return out;
}

namespace {

KTable pointwise(const KTable& f, const KTable& g, kernels::BinModFn op) {
  if (f.k() != g.k() || f.n() != g.n())
    bad_arg("shape mismatch: (" + std::to_string(f.k()) + "," +
            std::to_string(f.n()) + ") vs (" + std::to_string(g.k()) + "," +
            std::to_string(g.n()) + ")");
  std::vector<std::uint8_t> out(f.size());
  op(out.data(), f.data(), g.data(), out.size(), std::uint8_t(f.k()));
  return KTable(f.k(), f.n(), std::move(out));
}

}  // namespace

KTable ring_add(const KTable& f, const KTable& g) {
  return pointwise(f, g, kernels::active().add_mod);
}

KTable ring_sub(const KTable& f, const KTable& g) {
  return pointwise(f, g, kernels::active().sub_mod);
}

bool is_symmetric_pair(const KTable& f, unsigned i, unsigned j) {
  check_position(i, f.n());
  check_position(j, f.n());
  if (i == j) bad_arg("symmetry check needs two distinct positions");
  const std::ptrdiff_t stride_i = std::ptrdiff_t(f.stride(i));
  const std::ptrdiff_t stride_j = std::ptrdiff_t(f.stride(j));
  std::vector<std::uint8_t> digits(f.n(), 0);
  const std::uint8_t* v = f.data();
  for (std::size_t m = 0; m < f.size(); ++m) {
    std::ptrdiff_t d =
        std::ptrdiff_t(digits[j - 1]) - std::ptrdiff_t(digits[i - 1]);
    if (v[m] != v[std::ptrdiff_t(m) + d * stride_i - d * stride_j])
      return false;
    odometer_step(digits.data(), f.n(), f.k());
  }
  return true;
}

bool is_totally_symmetric(const KTable& f) {
  const auto vars = essential_set(f).members();
  for (std::size_t t = 1; t < vars.size(); ++t)
    if (!is_symmetric_pair(f, vars[t - 1], vars[t])) return false;
  return true;
}

std::optional<std::map<std::vector<std::uint8_t>, std::uint8_t>>
oddsupp_determined(const KTable& f) {
  std::map<std::vector<std::uint8_t>, std::uint8_t> induced;
  std::vector<std::uint8_t> digits(f.n(), 0);
  for (std::size_t m = 0; m < f.size(); ++m) {
    auto key = oddsupp(digits);
    auto [it, inserted] = induced.emplace(std::move(key), f[m]);
    if (!inserted && it->second != f[m]) return std::nullopt;
    odometer_step(digits.data(), f.n(), f.k());
  }
  return induced;
}

}  // namespace gapkit
