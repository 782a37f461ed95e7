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

#include <boost/multiprecision/cpp_int.hpp>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "gapkit/ktable.hpp"
#include "gapkit/rng.hpp"

namespace gapkit {

// Counts overflow machine words immediately; all counting is exact.
using BigCount = boost::multiprecision::cpp_int;

enum class Family { gnn, repfree, gpk, g2plus, g2minus, g2k3 };

const char* family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);

struct FamilyId {
  Family tag = Family::gnn;
  unsigned k = 0;
  unsigned n = 0;
  unsigned p = 0;  // gpk only
};

struct AllMode {};
struct SampleMode {
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};
using Mode = std::variant<AllMode, SampleMode>;

// Single-consumer sequential stream of tables in a deterministic order.
class TableStream {
 public:
  virtual ~TableStream() = default;
  virtual std::optional<KTable> next() = 0;
};

// Functions constant on the tuples with a repeated entry and free on the
// repetition-free ones, the k all-equal assignments excluded; every member
// keeps all n variables essential and loses all of them in any minor.
std::unique_ptr<TableStream> gen_gnn(unsigned k, unsigned n, const Mode& mode);

// Functions supported only on repetition-free tuples (zero table included).
std::unique_ptr<TableStream> gen_repfree(unsigned k, unsigned n,
                                         const Mode& mode);

// h + g with h essential on an exact (n-p)-subset of the positions and g a
// gap-n function whose minors are all zero; yields gap exactly p. p >= 3
// requires p < n <= k, p = 2 additionally requires n > 3.
std::unique_ptr<TableStream> gen_gpk(unsigned k, unsigned n, unsigned p,
                                     const Mode& mode);

// The ternary gap-2 class: 8 symmetric parts per admissible coefficient
// tuple, paired with every repetition-free part. k = 3 is the grounded
// construction; k > 3 extends the same sums to k-1 as an experiment.
std::unique_ptr<TableStream> gen_g2k3(unsigned k, const Mode& mode);

// Gap-2 minus-class functions for 3 < n <= k: an oddsupp-driven totally
// symmetric part found by exhaustive search, paired with every nonzero
// repetition-free part.
std::unique_ptr<TableStream> gen_g2_minus(unsigned k, unsigned n,
                                          const Mode& mode);

std::unique_ptr<TableStream> generate(const FamilyId& id, const Mode& mode);

// Binary auxiliary tables: s = 1 iff x1 = x2; u(alpha) = 1 iff
// x1 = x2 != alpha; v(alpha) = 1 iff x1 = alpha and x2 != alpha.
KTable aux_s(unsigned k);
KTable aux_u(unsigned alpha, unsigned k);
KTable aux_v(unsigned alpha, unsigned k);

// The distinct symmetric parts for one coefficient tuple (k entries, not
// all equal): four base shapes closed under variable permutation.
std::vector<KTable> g2k3_symmetric_parts(std::span<const std::uint8_t> coeffs,
                                         unsigned k);

// Deterministic exhaustive search over oddsupp-specified candidates,
// filtered by the minor essential-set condition.
std::vector<KTable> g2minus_symmetric_parts(unsigned k, unsigned n);

BigCount count_gnn(unsigned k, unsigned n);
BigCount count_exact_ess(unsigned k, unsigned n, unsigned m);
BigCount count_gpk(unsigned k, unsigned n, unsigned p);
BigCount count_g2_plus(unsigned k, unsigned n);
BigCount count_g2k3(unsigned k);

// Closed form for the family size, when one exists.
std::optional<BigCount> family_formula(const FamilyId& id);

// Number of emissions an all-mode stream performs (pre-deduplication);
// used for feasibility budgeting. Runs the symmetric-part search for the
// minus family.
BigCount all_mode_cardinality(const FamilyId& id);

}  // namespace gapkit
