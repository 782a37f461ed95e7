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

#include "gapkit/gap.hpp"

#include <bit>
#include <stdexcept>
#include <vector>

namespace gapkit {

namespace {

struct MinorScan {
  unsigned ess = 0;
  std::optional<unsigned> gap;
  std::optional<GapReport::BestMinor> best;
  bool some_best_keeps_j = false;  // ess(minor) maximal and x_j essential
  bool no_minor_keeps_v = true;    // x_v fictive in every nontrivial minor
};

MinorScan scan_minors(const KTable& f) {
  MinorScan s;
  const VarSet essentials = essential_set(f);
  s.ess = essentials.size();
  if (s.ess < 2) return s;

  const auto vars = essentials.members();
  unsigned best_ess = 0;
  std::vector<std::pair<std::pair<unsigned, unsigned>, std::uint64_t>> masks;
  masks.reserve(std::size_t(s.ess) * (s.ess - 1));
  for (unsigned i : vars)
    for (unsigned j : vars) {
      if (i == j) continue;
      KTable minor = identify(f, i, j);
      std::uint64_t mask = detail::ess_mask(minor.data(), f.k(), f.n());
      masks.push_back({{i, j}, mask});
      unsigned e = unsigned(std::popcount(mask));
      if (!s.best || e > best_ess) {
        best_ess = e;
        s.best = GapReport::BestMinor{i, j, e};
      }
      if ((mask >> (j - 1)) & 1) s.no_minor_keeps_v = false;
    }
  s.gap = s.ess - best_ess;
  for (auto& [pair, mask] : masks)
    if (std::popcount(mask) == int(best_ess) && ((mask >> (pair.second - 1)) & 1))
      s.some_best_keeps_j = true;
  return s;
}

}  // namespace

std::optional<unsigned> gap(const KTable& f) { return scan_minors(f).gap; }

bool in_gnn(const KTable& f) {
  MinorScan s = scan_minors(f);
  return s.ess == f.n() && s.gap && *s.gap == f.n();
}

std::optional<Decomposition> decompose(const KTable& f) {
  MinorScan s = scan_minors(f);
  if (!s.gap || *s.gap < 2) return std::nullopt;
  const unsigned target = s.ess - *s.gap;
  for (unsigned u : essential_set(f).members())
    for (unsigned v : essential_set(f).members()) {
      if (u == v) continue;
      KTable minor = identify(f, u, v);
      std::uint64_t mask = detail::ess_mask(minor.data(), f.k(), f.n());
      if (unsigned(std::popcount(mask)) != target) continue;
      if ((mask >> (v - 1)) & 1) continue;
      KTable g = ring_sub(f, minor);
      return Decomposition{std::move(minor), std::move(g)};
    }
  return std::nullopt;
}

GapReport classify(const KTable& f) {
  MinorScan s = scan_minors(f);
  GapReport report;
  report.ess = s.ess;
  report.gap = s.gap;
  report.best_minor = s.best;
  report.gnn_member = s.ess == f.n() && s.gap && *s.gap == f.n();
  if (s.gap && *s.gap >= 2) {
    report.plus_member = s.some_best_keeps_j;
    report.minus_member = s.no_minor_keeps_v;
    report.decomposition = decompose(f);
  }
  return report;
}

std::optional<MinusStructure> minus_structure(const KTable& f) {
  const unsigned n = f.n();
  const unsigned k = f.k();
  if (!(n > 3 && n <= k))
    throw std::invalid_argument(
        "minus_structure requires 3 < n <= k, got n=" + std::to_string(n) +
        ", k=" + std::to_string(k));
  if (!classify(f).minus_member) return std::nullopt;

  // Support split along tuples with/without a repeated entry.
  std::vector<std::uint8_t> tv(f.size(), 0);
  std::vector<std::uint8_t> gv(f.size(), 0);
  for (std::size_t m = 0; m < f.size(); ++m) {
    auto tuple = index_to_tuple(m, k, n);
    (has_repetition(tuple) ? tv[m] : gv[m]) = f[m];
  }
  KTable t(k, n, std::move(tv));
  KTable g(k, n, std::move(gv));

  if (!is_totally_symmetric(t)) return std::nullopt;

  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      VarSet expected = VarSet::full(n);
      VarSet minor_ess = essential_set(identify(t, i, j));
      expected = VarSet(n, expected.bits() & ~(std::uint64_t(1) << (i - 1)) &
                               ~(std::uint64_t(1) << (j - 1)));
      if (minor_ess != expected) return std::nullopt;
    }

  const KTable zero(k, n);
  for (auto& rec : nontrivial_minors(g))
    if (rec.table != zero) return std::nullopt;

  // All minors of t must realize one (n-2)-ary symmetric function over the
  // surviving positions in ascending order.
  KTable t21 = identify(t, 2, 1);
  std::vector<std::uint8_t> hv(checked_pow(k, n - 2));
  for (std::size_t r = 0; r < hv.size(); ++r) {
    auto rest = index_to_tuple(r, k, n - 2);
    std::vector<std::uint8_t> full(n, 0);
    std::copy(rest.begin(), rest.end(), full.begin() + 2);
    hv[r] = t21.at(full);
  }
  KTable h_sym(k, n - 2, std::move(hv));
  if (!is_totally_symmetric(h_sym)) return std::nullopt;

  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j) {
      if (i == j) continue;
      KTable minor = identify(t, i, j);
      std::vector<std::uint8_t> rest;
      rest.reserve(n - 2);
      for (std::size_t m = 0; m < minor.size(); ++m) {
        auto tuple = index_to_tuple(m, k, n);
        rest.clear();
        for (unsigned pos = 1; pos <= n; ++pos)
          if (pos != i && pos != j) rest.push_back(tuple[pos - 1]);
        if (minor[m] != h_sym.at(rest)) return std::nullopt;
      }
    }

  return MinusStructure{std::move(t), std::move(g), std::move(h_sym)};
}

}  // namespace gapkit
