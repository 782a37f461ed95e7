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

#include "gapkit/census.hpp"

using namespace gapkit;

TEST_CASE("exhaustive census of the binary Boolean square") {
  Distribution d = census_exhaustive(2, 2);
  CHECK(d.total == 16);
  REQUIRE(d.cells.size() == 4);
  CHECK(d.cells.at({0, -1}) == 2);
  CHECK(d.cells.at({1, -1}) == 4);
  CHECK(d.cells.at({2, 1}) == 4);
  CHECK(d.cells.at({2, 2}) == 6);
  CHECK(d.cells.at({2, 2}) == count_gnn(2, 2));

  CHECK(to_tsv(d) ==
        "ess\tgap\tcount\n"
        "0\t-\t2\n"
        "1\t-\t4\n"
        "2\t1\t4\n"
        "2\t2\t6\n");
}

TEST_CASE("exhaustive census results do not depend on the worker count") {
  Distribution one = census_exhaustive(3, 2, 1);
  CHECK(one.cells.at({2, 2}) == 2184);
  CHECK(one.cells.at({2, 2}) == count_gnn(3, 2));
  for (unsigned jobs : {2u, 3u, 5u}) {
    Distribution many = census_exhaustive(3, 2, jobs);
    CHECK(many.cells == one.cells);
    CHECK(many.total == one.total);
  }
}

TEST_CASE("Boolean ternary census and the gap bound") {
  Distribution d = census_exhaustive(2, 3);
  CHECK(d.total == 256);
  BigCount ess3 = 0;
  for (const auto& [key, count] : d.cells) {
    if (key.first == 3) {
      ess3 += count;
      CHECK(key.second <= 2);
    }
  }
  CHECK(ess3 == 218);
  CHECK(ess3 == count_exact_ess(2, 3, 3));
}

TEST_CASE("census rows sum to the exact essential-arity counts") {
  for (auto [k, n] : {std::pair<unsigned, unsigned>{2, 3}, {3, 2}, {2, 4}}) {
    Distribution d = census_exhaustive(k, n);
    std::map<unsigned, BigCount> by_ess;
    for (const auto& [key, count] : d.cells) by_ess[key.first] += count;
    for (unsigned m = 0; m <= n; ++m) {
      BigCount want = count_exact_ess(k, n, m);
      BigCount got = by_ess.count(m) ? by_ess.at(m) : 0;
      CHECK(got == want);
    }
  }
}

TEST_CASE("sampled census is reproducible and respects the gap bound") {
  Distribution a = census_sample(3, 3, 2000, 0xcafe, 1);
  Distribution b = census_sample(3, 3, 2000, 0xcafe, 3);
  CHECK(a.cells == b.cells);
  CHECK(a.total == 2000);
  for (const auto& [key, count] : a.cells) CHECK(key.second <= 3);

  CHECK_THROWS_AS(census_sample(3, 3, 0, 1), std::invalid_argument);

  // above the base the gap of a fully essential function stays at most 2
  Distribution wide = census_sample(3, 4, 10000, 0xbead);
  for (const auto& [key, count] : wide.cells)
    if (key.first == 4) CHECK(key.second <= 2);
}

TEST_CASE("feasibility refusals state the required budget") {
  try {
    census_exhaustive(3, 3);
    FAIL("expected a refusal");
  } catch (const FeasibilityError& e) {
    CHECK(e.required() == BigCount("7625597484987"));
    CHECK(std::string(e.what()).find("7625597484987") != std::string::npos);
  }

  CHECK_THROWS_AS(census_exhaustive(2, 2, 1, std::uint64_t(10)),
                  FeasibilityError);

  // all-mode verification refuses oversized families the same way
  CHECK_THROWS_AS(verify_family(FamilyId{Family::gnn, 4, 4, 0}, AllMode{}),
                  FeasibilityError);
}

TEST_CASE("verify_family on feasible families") {
  VerifyReport gnn = verify_family(FamilyId{Family::gnn, 3, 2, 0}, AllMode{});
  CHECK(gnn.verdict == VerifyReport::Verdict::pass);
  CHECK(gnn.distinct == 2184);
  CHECK(gnn.emitted == 2184);
  CHECK(gnn.predicate_failures == 0);
  REQUIRE(gnn.formula_value.has_value());
  CHECK(*gnn.formula_value == 2184);

  VerifyReport rep =
      verify_family(FamilyId{Family::repfree, 3, 3, 0}, AllMode{});
  CHECK(rep.verdict == VerifyReport::Verdict::pass);
  CHECK(rep.distinct == 729);

  VerifyReport gpk = verify_family(FamilyId{Family::gpk, 4, 4, 3},
                                   SampleMode{100, 0x5eed});
  CHECK(gpk.verdict == VerifyReport::Verdict::pass);
  CHECK(gpk.predicate_failures == 0);
  CHECK_FALSE(gpk.formula_value.has_value());  // sampled: no formula claim

  VerifyReport tern = verify_family(FamilyId{Family::g2k3, 3, 3, 0},
                                    SampleMode{60, 0x5eee});
  CHECK(tern.predicate_failures == 0);

  std::string text = to_report(gnn);
  CHECK(text.find("family: gnn") != std::string::npos);
  CHECK(text.find("verdict: pass") != std::string::npos);
}

TEST_CASE("ternary corpus verification surfaces the degenerate "
          "combinations") {
  // Three of the eight symmetric-part shapes fix a single coordinate plane
  // on the repeated-entry tuples. For each of the 24 admissible coefficient
  // tuples, exactly one repetition-free part completes such a plane into a
  // function of one variable, which then has no gap at all. The enumeration
  // is otherwise sound: 3 * 24 = 72 of the 139968 pairwise-distinct tables
  // fail the class predicate, so the class itself has 139896 members.
  VerifyReport r =
      verify_family(FamilyId{Family::g2k3, 3, 3, 0}, AllMode{});
  CHECK(r.emitted == 139968);
  CHECK(r.distinct == 139968);
  CHECK(r.predicate_failures == 72);
  CHECK(r.verdict == VerifyReport::Verdict::fail);
}

TEST_CASE("the ternary experiment at k = 4 reports the discrepancy") {
  VerifyReport r = verify_family(FamilyId{Family::g2k3, 4, 3, 0},
                                 SampleMode{25, 0xf00d});
  CHECK(r.predicate_failures == 0);  // emitted tables still have gap 2
  REQUIRE(r.experiment_formula.has_value());
  REQUIRE(r.experiment_nominal.has_value());
  CHECK(*r.experiment_formula != *r.experiment_nominal);
  std::string text = to_report(r);
  CHECK(text.find("formula_claim") != std::string::npos);
  CHECK(text.find("nominal_enumeration") != std::string::npos);
}
