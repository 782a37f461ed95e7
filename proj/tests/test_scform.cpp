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

#include "gapkit/scform.hpp"
#include "support.hpp"

using namespace gapkit;
using testsupport::indicator;
using testsupport::random_table;

TEST_CASE("parse the worked expressions") {
  KTable f = parse_expr("x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2", 3, 3);
  for (std::size_t m = 0; m < 27; ++m)
    CHECK(f[m] == ((m == 0 || m == 11) ? 1 : 0));

  KTable r = parse_expr("x2^0 + 2*x1^1 x2^0 x3^2 + 2*x1^2 x2^0 x3^1", 3, 3);
  CHECK(identify(r, 2, 1) == indicator(3, 3, {{1, 0}}));

  CHECK(parse_expr("0", 3, 3) == KTable(3, 3));
  CHECK(parse_expr("2", 3, 2) == KTable::constant(3, 2, 2));
}

TEST_CASE("surface syntax variants") {
  // juxtaposed factors, the paper's dot product and circled plus
  KTable a = parse_expr("x1^0x2^0x3^0 \xE2\x8A\x95 2.x1^1x2^0x3^2", 3, 3);
  KTable b = parse_expr("x1^0 x2^0 x3^0 + 2*x1^1 x2^0 x3^2", 3, 3);
  CHECK(a == b);

  // an expression omitting a variable leaves it fictive
  KTable c = parse_expr("x2^0", 3, 3);
  CHECK(c == indicator(3, 3, {{2, 0}}));
  CHECK_FALSE(is_essential(c, 1));

  // dangling multiplication sign still denotes the bare constant
  CHECK(parse_expr("2*", 3, 2) == KTable::constant(3, 2, 2));
}

TEST_CASE("parser diagnostics") {
  auto kind_of = [](auto fn) {
    try {
      fn();
    } catch (const ScformError& e) {
      return e.kind();
    }
    return ScformError::Kind::syntax;
  };

  CHECK_THROWS_AS(parse_expr("", 3, 3), ScformError);
  CHECK_THROWS_AS(parse_expr("x1^0 +", 3, 3), ScformError);
  CHECK_THROWS_AS(parse_expr("x1", 3, 3), ScformError);
  CHECK_THROWS_AS(parse_expr("y1^0", 3, 3), ScformError);
  CHECK_THROWS_AS(parse_expr("2 x1^0", 3, 3), ScformError);

  CHECK(kind_of([] { parse_expr("x4^0", 3, 3); }) ==
        ScformError::Kind::index_range);
  CHECK(kind_of([] { parse_expr("x0^0", 3, 3); }) ==
        ScformError::Kind::index_range);
  CHECK(kind_of([] { parse_expr("x1^3", 3, 3); }) ==
        ScformError::Kind::value_range);
  CHECK(kind_of([] { parse_expr("5*x1^0", 3, 3); }) ==
        ScformError::Kind::value_range);
  CHECK(kind_of([] { parse_expr("x1^0 x1^1", 3, 3); }) ==
        ScformError::Kind::syntax);
  // truncated multi-byte operator
  CHECK(kind_of([] { parse_expr("x1^0 \xE2", 3, 3); }) ==
        ScformError::Kind::syntax);

  try {
    parse_expr("x1^0 +\n x9^1", 3, 3);
    FAIL("expected a diagnostic");
  } catch (const ScformError& e) {
    CHECK(e.kind() == ScformError::Kind::index_range);
    CHECK(e.line() == 2);
    CHECK(e.col() > 1);
  }
}

TEST_CASE("canonical printing") {
  CHECK(print_sc(KTable(3, 3)) == "0");
  CHECK(print_sc(KTable::constant(3, 1, 2)) == "2*x1^0 + 2*x1^1 + 2*x1^2");

  KTable f = parse_expr("x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2", 3, 3);
  CHECK(print_sc(f) == "x1^0 x2^0 x3^0 + x1^1 x2^0 x3^2");

  CHECK(print_sc(KTable::constant(4, 0, 3)) == "3");
  CHECK(print_sc(KTable(4, 0)) == "0");
}

TEST_CASE("parse/print round trip and uniqueness") {
  SplitMix64 rng(0x73636601ull);
  for (auto [k, n] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {3, 3}}) {
    for (int it = 0; it < 400; ++it) {
      KTable f = random_table(rng, k, n);
      CHECK(parse_expr(print_sc(f), k, n) == f);
    }
  }
  // equal canonical prints iff equal tables
  for (int it = 0; it < 200; ++it) {
    KTable f = random_table(rng, 3, 2);
    KTable g = random_table(rng, 3, 2);
    CHECK((print_sc(f) == print_sc(g)) == (f == g));
  }
}

TEST_CASE("table files") {
  KTable x = read_table("2 2\n0 1 1 0");
  CHECK(x == KTable(2, 2, {0, 1, 1, 0}));

  // comments and loose whitespace
  KTable y = read_table("# xor\n2 2 # header\n0 1\n1 0\n");
  CHECK(y == x);

  // write-read and read-write identities
  SplitMix64 rng(0x73636602ull);
  for (int it = 0; it < 100; ++it) {
    KTable f = random_table(rng, 3, 3);
    CHECK(read_table(write_table(f)) == f);
  }
  std::string canonical = "3 2\n0 1 2 0 1 2 0 1 2\n";
  CHECK(write_table(read_table(canonical)) == canonical);

  auto kind_of = [](const std::string& text) {
    try {
      read_table(text);
    } catch (const ScformError& e) {
      return e.kind();
    }
    return ScformError::Kind::syntax;
  };
  CHECK(kind_of("") == ScformError::Kind::header);
  CHECK(kind_of("x 2\n0 1") == ScformError::Kind::header);
  CHECK(kind_of("1 2\n0 0") == ScformError::Kind::header);
  CHECK(kind_of("3 2\n0 0 0 0 0 0 0 0") == ScformError::Kind::value_count);
  CHECK(kind_of("2 2\n0 1 2 0") == ScformError::Kind::value_range);

  try {
    read_table("3 2\n0 0 0 0 0 0 0 0");
    FAIL("expected a diagnostic");
  } catch (const ScformError& e) {
    CHECK(std::string(e.what()).find("expected 9 values, got 8") !=
          std::string::npos);
  }
}
