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

#include <optional>
#include <utility>

#include "gapkit/ktable.hpp"

namespace gapkit {

// ess(f) minus the best essential arity over the nontrivial identification
// minors. Undefined (nullopt) while ess(f) < 2, where Min(f) is empty.
std::optional<unsigned> gap(const KTable& f);

// ess(f) = n and gap(f) = n: the functions that lose every essential
// variable under any identification.
bool in_gnn(const KTable& f);

struct Decomposition {
  KTable h;  // the common collapsing minor, ess(h) = ess(f) - gap(f)
  KTable g;  // f with h subtracted pointwise
};

struct MinusStructure {
  KTable t;      // part supported on tuples with a repeated entry
  KTable g;      // part supported on repetition-free tuples
  KTable h_sym;  // the (n-2)-ary totally symmetric function all minors share
};

struct GapReport {
  unsigned ess = 0;
  std::optional<unsigned> gap;
  struct BestMinor {
    unsigned i = 0;
    unsigned j = 0;
    unsigned ess = 0;
  };
  std::optional<BestMinor> best_minor;
  bool plus_member = false;   // some best minor keeps x_j essential
  bool minus_member = false;  // no minor keeps the substituted variable
  bool gnn_member = false;
  std::optional<Decomposition> decomposition;
};

GapReport classify(const KTable& f);

// Splits f as h + g over Z_k via the lexicographically smallest pair (u,v)
// with ess(f_{u<-v}) = ess(f) - gap(f) and x_v fictive in the minor.
// Nullopt when gap(f) is undefined or below 2, or no such pair exists.
std::optional<Decomposition> decompose(const KTable& f);

// Support split t + g for minus-class functions, 3 < n <= k (anything else
// is a usage error). Nullopt when f is not minus-class or a structural
// check fails: t totally symmetric, Ess(t_{i<-j}) complementary to {i,j}
// for every pair, all nontrivial minors of g zero, and one (n-2)-ary
// symmetric function consistent with every minor of t.
std::optional<MinusStructure> minus_structure(const KTable& f);

}  // namespace gapkit
