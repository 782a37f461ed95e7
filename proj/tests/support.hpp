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

// Definition-level oracles used to pin expected values. They work through
// the tuple codec point by point and deliberately avoid the stride scans,
// index maps and kernels that the library uses.

#include <algorithm>
#include <optional>
#include <vector>

#include "gapkit/gap.hpp"
#include "gapkit/ktable.hpp"
#include "gapkit/rng.hpp"

namespace testsupport {

inline gapkit::KTable random_table(gapkit::SplitMix64& rng, unsigned k,
                                   unsigned n) {
  std::vector<std::uint8_t> v(gapkit::checked_pow(k, n));
  for (auto& e : v) e = std::uint8_t(rng.bounded(k));
  return gapkit::KTable(k, n, std::move(v));
}

// Definition: some point and some replacement value at position i change f.
inline bool oracle_is_essential(const gapkit::KTable& f, unsigned i) {
  for (std::size_t m = 0; m < f.size(); ++m) {
    auto t = gapkit::index_to_tuple(m, f.k(), f.n());
    for (unsigned b = 0; b < f.k(); ++b) {
      auto u = t;
      u[i - 1] = std::uint8_t(b);
      if (f.at(u) != f.at(t)) return true;
    }
  }
  return false;
}

inline std::vector<unsigned> oracle_essential_vars(const gapkit::KTable& f) {
  std::vector<unsigned> out;
  for (unsigned i = 1; i <= f.n(); ++i)
    if (oracle_is_essential(f, i)) out.push_back(i);
  return out;
}

// Definition: g(a_1..a_n) = f(a with the i-th entry set to the j-th).
inline gapkit::KTable oracle_identify(const gapkit::KTable& f, unsigned i,
                                      unsigned j) {
  std::vector<std::uint8_t> v(f.size());
  for (std::size_t m = 0; m < f.size(); ++m) {
    auto t = gapkit::index_to_tuple(m, f.k(), f.n());
    t[i - 1] = t[j - 1];
    v[m] = f.at(t);
  }
  return gapkit::KTable(f.k(), f.n(), std::move(v));
}

inline std::optional<unsigned> oracle_gap(const gapkit::KTable& f) {
  auto vars = oracle_essential_vars(f);
  if (vars.size() < 2) return std::nullopt;
  unsigned best = 0;
  for (unsigned i : vars)
    for (unsigned j : vars) {
      if (i == j) continue;
      unsigned e =
          unsigned(oracle_essential_vars(oracle_identify(f, i, j)).size());
      best = std::max(best, e);
    }
  return unsigned(vars.size()) - best;
}

// Table with value 1 exactly where every listed (position, value) pin
// holds; a brute-force stand-in for conjunction expressions.
inline gapkit::KTable indicator(
    unsigned k, unsigned n,
    const std::vector<std::pair<unsigned, std::uint8_t>>& pins) {
  std::vector<std::uint8_t> v(gapkit::checked_pow(k, n), 0);
  for (std::size_t m = 0; m < v.size(); ++m) {
    auto t = gapkit::index_to_tuple(m, k, n);
    bool hit = true;
    for (auto [pos, val] : pins)
      if (t[pos - 1] != val) hit = false;
    if (hit) v[m] = 1;
  }
  return gapkit::KTable(k, n, std::move(v));
}

// f with position i made fictive by replaying a random table of the other
// positions.
inline gapkit::KTable random_with_fictive(gapkit::SplitMix64& rng, unsigned k,
                                          unsigned n, unsigned i) {
  gapkit::KTable core = random_table(rng, k, n - 1);
  std::vector<std::uint8_t> v(gapkit::checked_pow(k, n));
  for (std::size_t m = 0; m < v.size(); ++m) {
    auto t = gapkit::index_to_tuple(m, k, n);
    std::vector<std::uint8_t> rest;
    for (unsigned pos = 1; pos <= n; ++pos)
      if (pos != i) rest.push_back(t[pos - 1]);
    v[m] = core.at(rest);
  }
  return gapkit::KTable(k, n, std::move(v));
}

}  // namespace testsupport
