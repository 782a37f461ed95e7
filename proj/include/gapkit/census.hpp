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

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "gapkit/families.hpp"
#include "gapkit/ktable.hpp"

namespace gapkit {

// Raised instead of starting a scan that exceeds the feasibility cap; the
// required budget is the exact number of tables the scan would touch.
class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(BigCount required, const std::string& msg);
  const BigCount& required() const { return required_; }

 private:
  BigCount required_;
};

struct Distribution {
  unsigned k = 0;
  unsigned n = 0;
  // gap = -1 encodes "undefined" (ess < 2); keys sort in output order.
  std::map<std::pair<unsigned, int>, BigCount> cells;
  BigCount total = 0;
};

// 2^34 unless overridden by the GAPKIT_CAP environment variable.
std::uint64_t default_cap();

// Classifies every function in P_k^n by (ess, gap). Function index m has
// the j-th table value as digit j of m base k, most significant first, so
// worker shards are contiguous index ranges; the merged result does not
// depend on the worker count. jobs = 0 picks the hardware concurrency.
Distribution census_exhaustive(unsigned k, unsigned n, unsigned jobs = 0,
                               std::optional<std::uint64_t> cap = {});

// Classifies `count` seeded-uniform random tables; reproducible for a
// fixed seed independently of the worker count.
Distribution census_sample(unsigned k, unsigned n, std::uint64_t count,
                           std::uint64_t seed, unsigned jobs = 0);

// TSV rendering: header ess<TAB>gap<TAB>count, '-' for undefined gap,
// rows sorted by (ess, gap).
std::string to_tsv(const Distribution& d);

struct VerifyReport {
  FamilyId family;
  bool sampled = false;
  BigCount emitted = 0;
  BigCount distinct = 0;
  BigCount predicate_failures = 0;
  std::optional<BigCount> formula_value;  // all-mode, when a formula exists
  // Extra diagnostics for the ternary-family experiment at k > 3: the
  // closed-form claim next to what the generator would actually emit.
  std::optional<BigCount> experiment_formula;
  std::optional<BigCount> experiment_nominal;
  // How many tables carried both subclass flags (gap-2 families).
  std::uint64_t plus_and_minus = 0;
  enum class Verdict { pass, fail, formula_mismatch };
  Verdict verdict = Verdict::fail;
};

// Runs the generator, checks every table against the family's defining
// predicate, deduplicates, and compares against the closed form when one
// applies (all-mode only).
VerifyReport verify_family(const FamilyId& id, const Mode& mode,
                           std::optional<std::uint64_t> cap = {});

// Key/value line rendering of a VerifyReport.
std::string to_report(const VerifyReport& r);

const char* verdict_name(VerifyReport::Verdict v);

}  // namespace gapkit
