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

#include <doctest.h>

#include <set>
#include <stdexcept>

#include "gapkit/ktable.hpp"
#include "support.hpp"

using namespace gapkit;
using testsupport::indicator;
using testsupport::oracle_identify;
using testsupport::oracle_is_essential;
using testsupport::random_table;

namespace {

KTable table_from_points(unsigned k, unsigned n,
                         const std::vector<std::vector<std::uint8_t>>& ones) {
  std::vector<std::uint8_t> v(checked_pow(k, n), 0);
  for (const auto& t : ones) v[tuple_to_index(t, k)] = 1;
  return KTable(k, n, std::move(v));
}

// x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2 over Z_3
KTable example_f() { return table_from_points(3, 3, {{0, 0, 0}, {1, 0, 2}}); }

// x1^0x2^0x3^0 + x1^0x2^1x3^1 + x1^0x2^2x3^2 + x1^1x2^0x3^1 + x1^1x2^1x3^0
//   + x1^2x2^0x3^2 + x1^2x2^2x3^0 over Z_3
KTable example_g() {
  return table_from_points(3, 3,
                           {{0, 0, 0},
                            {0, 1, 1},
                            {0, 2, 2},
                            {1, 0, 1},
                            {1, 1, 0},
                            {2, 0, 2},
                            {2, 2, 0}});
}

// x2^0 + 2*x1^1 x2^0 x3^2 + 2*x1^2 x2^0 x3^1 over Z_3
KTable example_r() {
  std::vector<std::uint8_t> v(27, 0);
  for (std::size_t m = 0; m < 27; ++m) {
    auto t = index_to_tuple(m, 3, 3);
    unsigned acc = (t[1] == 0) ? 1 : 0;
    if (t[0] == 1 && t[1] == 0 && t[2] == 2) acc += 2;
    if (t[0] == 2 && t[1] == 0 && t[2] == 1) acc += 2;
    v[m] = std::uint8_t(acc % 3);
  }
  return KTable(3, 3, std::move(v));
}

}  // namespace

TEST_CASE("tuple index codec") {
  CHECK(tuple_to_index(std::vector<std::uint8_t>{1, 0, 2}, 3) == 11);
  CHECK(tuple_to_index(std::vector<std::uint8_t>{0, 0, 0, 0}, 2) == 0);
  CHECK(index_to_tuple(7, 3, 2) == std::vector<std::uint8_t>{2, 1});

  for (auto [k, n] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {3, 3},
                      {4, 2}}) {
    for (std::size_t m = 0; m < checked_pow(k, n); ++m)
      CHECK(tuple_to_index(index_to_tuple(m, k, n), k) == m);
  }

  CHECK_THROWS_AS(tuple_to_index(std::vector<std::uint8_t>{3}, 3),
                  std::invalid_argument);
  CHECK_THROWS_AS(index_to_tuple(9, 3, 2), std::invalid_argument);
}

TEST_CASE("KTable validation") {
  CHECK_THROWS_AS(KTable(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(KTable(3, 2, std::vector<std::uint8_t>(8, 0)),
                  std::invalid_argument);
  CHECK_THROWS_AS(KTable(3, 1, {0, 1, 3}), std::invalid_argument);
  KTable nullary(3, 0);
  CHECK(nullary.size() == 1);
  CHECK(essential_set(nullary).members().empty());
}

TEST_CASE("essential variables of the worked example") {
  KTable f = example_f();
  CHECK(is_essential(f, 2));
  CHECK(essential_set(f) == VarSet::full(3));

  KTable c = KTable::constant(3, 3, 2);
  for (unsigned i = 1; i <= 3; ++i) CHECK_FALSE(is_essential(c, i));

  KTable proj = indicator(3, 3, {{1, 0}, {3, 0}});  // x1^0 x3^0
  CHECK_FALSE(is_essential(proj, 2));
  CHECK(is_essential(proj, 1));

  CHECK_THROWS_AS(is_essential(f, 0), std::invalid_argument);
  CHECK_THROWS_AS(is_essential(f, 4), std::invalid_argument);
}

TEST_CASE("essential_set matches the pointwise definition on random tables") {
  SplitMix64 rng(0x7461626c01ull);
  for (auto [k, n] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {3, 3},
                      {4, 2}}) {
    for (int it = 0; it < 60; ++it) {
      KTable f = random_table(rng, k, n);
      VarSet got = essential_set(f);
      for (unsigned i = 1; i <= n; ++i)
        CHECK(got.contains(i) == oracle_is_essential(f, i));
    }
  }

  // xor
  KTable x(2, 2, {0, 1, 1, 0});
  CHECK(essential_set(x).members() == std::vector<unsigned>{1, 2});
}

TEST_CASE("identification minors") {
  KTable f = example_f();
  CHECK(identify(f, 2, 1) == indicator(3, 3, {{1, 0}, {3, 0}}));

  KTable g = example_g();
  CHECK(identify(g, 2, 1) == indicator(3, 3, {{3, 0}}));

  // identifying a fictive variable changes nothing
  SplitMix64 rng(0x7461626c02ull);
  for (int it = 0; it < 20; ++it) {
    KTable h = testsupport::random_with_fictive(rng, 3, 3, 2);
    CHECK(identify(h, 2, 1) == h);
    CHECK(identify(h, 2, 3) == h);
  }

  CHECK_THROWS_AS(identify(f, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(identify(f, 0, 1), std::invalid_argument);

  for (auto [k, n] : {std::pair<unsigned, unsigned>{2, 3}, {3, 3}, {4, 2}}) {
    for (int it = 0; it < 40; ++it) {
      KTable t = random_table(rng, k, n);
      for (unsigned i = 1; i <= n; ++i)
        for (unsigned j = 1; j <= n; ++j)
          if (i != j) CHECK(identify(t, i, j) == oracle_identify(t, i, j));
    }
  }
}

TEST_CASE("nontrivial minor records") {
  KTable f = example_f();
  CHECK(nontrivial_minors(f).size() == 6);
  CHECK(nontrivial_minors(KTable::constant(3, 3, 1)).empty());

  KTable g = example_g();
  auto recs = nontrivial_minors(g);
  REQUIRE(recs.size() == 6);
  std::set<std::vector<std::uint8_t>> tables;
  for (auto& rec : recs)
    tables.insert({rec.table.values().begin(), rec.table.values().end()});
  // the paper's three projection-like minors: x3^0, x2^0, x1^0
  std::set<std::vector<std::uint8_t>> expected;
  for (unsigned pos = 1; pos <= 3; ++pos) {
    KTable ind = indicator(3, 3, {{pos, 0}});
    expected.insert({ind.values().begin(), ind.values().end()});
  }
  CHECK(tables == expected);

  auto unique = minor_function_set(g);
  CHECK(unique.size() == 3);
}

TEST_CASE("ring operations") {
  SplitMix64 rng(0x7461626c03ull);
  KTable f = random_table(rng, 3, 3);
  KTable g = random_table(rng, 3, 3);
  KTable zero(3, 3);

  CHECK(ring_sub(f, f) == zero);
  CHECK(ring_add(ring_sub(f, g), g) == f);
  CHECK(ring_add(f, zero) == f);

  KTable two = KTable::constant(3, 0, 2);
  CHECK(ring_add(two, two) == KTable::constant(3, 0, 1));

  CHECK_THROWS_AS(ring_add(f, KTable(3, 2)), std::invalid_argument);
  CHECK_THROWS_AS(ring_add(f, KTable(4, 3)), std::invalid_argument);

  // associativity spot check
  KTable h = random_table(rng, 3, 3);
  CHECK(ring_add(ring_add(f, g), h) == ring_add(f, ring_add(g, h)));

  // fictive positions are closed under pointwise sums
  for (int it = 0; it < 20; ++it) {
    KTable a = testsupport::random_with_fictive(rng, 3, 3, 1);
    KTable b = testsupport::random_with_fictive(rng, 3, 3, 1);
    CHECK_FALSE(is_essential(ring_add(a, b), 1));
  }
}

TEST_CASE("tuple predicates") {
  CHECK(has_repetition(std::vector<std::uint8_t>{0, 1, 0}));
  CHECK_FALSE(has_repetition(std::vector<std::uint8_t>{0, 1, 2}));

  SplitMix64 rng(0x7461626c04ull);
  for (int it = 0; it < 50; ++it) {  // pigeonhole: n > k forces a repeat
    std::vector<std::uint8_t> t(4);
    for (auto& e : t) e = std::uint8_t(rng.bounded(3));
    CHECK(has_repetition(t));
  }

  CHECK(oddsupp(std::vector<std::uint8_t>{1, 1, 2}) ==
        std::vector<std::uint8_t>{2});
  CHECK(oddsupp(std::vector<std::uint8_t>{0, 1, 2}) ==
        std::vector<std::uint8_t>{0, 1, 2});
  CHECK(oddsupp(std::vector<std::uint8_t>{2, 2, 2}) ==
        std::vector<std::uint8_t>{2});
}

TEST_CASE("pairwise and total symmetry") {
  KTable x(2, 2, {0, 1, 1, 0});
  CHECK(is_totally_symmetric(x));

  // x1^0 x3^0: swapping the two essential positions fixes the table;
  // swapping an essential position with the fictive x2 does not
  // (at (0,1,0) the table holds 1 but reads 0 after either swap).
  KTable proj = indicator(3, 3, {{1, 0}, {3, 0}});
  CHECK(is_symmetric_pair(proj, 1, 3));
  CHECK_FALSE(is_symmetric_pair(proj, 1, 2));
  CHECK_FALSE(is_symmetric_pair(proj, 2, 3));
  CHECK(is_totally_symmetric(proj));  // transpositions of {1, 3} only

  // r's two weighted conjunctions swap into each other under x1 <-> x3,
  // so the pair (1,3) is symmetric; (1,2) and (2,3) are not.
  KTable r = example_r();
  bool swap13 = true;
  for (std::size_t m = 0; m < r.size(); ++m) {
    auto t = index_to_tuple(m, 3, 3);
    std::swap(t[0], t[2]);
    if (r.at(t) != r[m]) swap13 = false;
  }
  CHECK(swap13);
  CHECK(is_symmetric_pair(r, 1, 3) == swap13);
  CHECK_FALSE(is_symmetric_pair(r, 1, 2));
  CHECK_FALSE(is_symmetric_pair(r, 2, 3));
  CHECK_FALSE(is_totally_symmetric(r));

  CHECK_THROWS_AS(is_symmetric_pair(r, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(is_symmetric_pair(r, 0, 2), std::invalid_argument);
}

TEST_CASE("oddsupp-determined functions") {
  CHECK(oddsupp_determined(KTable::constant(3, 3, 1)).has_value());

  KTable x(2, 2, {0, 1, 1, 0});
  auto induced = oddsupp_determined(x);
  REQUIRE(induced.has_value());
  CHECK(induced->at({}) == 0);
  CHECK(induced->at({0, 1}) == 1);

  KTable proj = indicator(2, 2, {{1, 0}});  // x1^0: (0,1) vs (1,0) disagree
  CHECK_FALSE(oddsupp_determined(proj).has_value());
}

TEST_CASE("VarSet basics") {
  VarSet s(4);
  s.insert(2);
  s.insert(4);
  CHECK(s.size() == 2);
  CHECK(s.contains(2));
  CHECK_FALSE(s.contains(1));
  CHECK(s.complement().members() == std::vector<unsigned>{1, 3});
  CHECK_THROWS_AS(s.insert(5), std::invalid_argument);
}
