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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gapkit/ktable.hpp"

namespace gapkit {

// Sum-of-conjunctions surface syntax:
//
//   expr   := term { ('+' | '⊕') term } | '0' ;
//   term   := coeff [ mult ] | [ coeff mult ] factor { ws factor } ;
//   mult   := '*' | '.' ;
//   factor := 'x' nat '^' nat ;
//   coeff  := nat ;
//
// x_i^a is the 0/1 indicator of x_i = a; '+' and '*'/'.' act mod k. The
// context (k, n) is external; variables absent from the text are fictive.

class ScformError : public std::runtime_error {
 public:
  enum class Kind { syntax, index_range, value_range, header, value_count };

  ScformError(Kind kind, unsigned line, unsigned col, const std::string& msg);

  Kind kind() const { return kind_; }
  unsigned line() const { return line_; }
  unsigned col() const { return col_; }

 private:
  Kind kind_;
  unsigned line_;
  unsigned col_;
};

struct SCFactor {
  unsigned var;         // 1-based position
  std::uint8_t alpha;   // indicator value
};

struct SCTerm {
  std::uint8_t coeff;
  std::vector<SCFactor> factors;
};

struct SCExpr {
  unsigned k = 0;
  unsigned n = 0;
  std::vector<SCTerm> terms;
};

SCExpr parse_sc(std::string_view text, unsigned k, unsigned n);
KTable eval_sc(const SCExpr& expr);
KTable parse_expr(std::string_view text, unsigned k, unsigned n);

// Canonical form: zero-coefficient terms dropped, terms in tuple-index
// order, every term carries the full factor list, unit coefficients
// implicit. parse_expr(print_sc(f), f.k, f.n) == f.
std::string print_sc(const KTable& f);

// Table file: header line "k n", then k^n whitespace-separated values in
// tuple-index order; '#' comments to end of line. Canonical files place
// all values on one line.
KTable read_table(std::string_view text);
std::string write_table(const KTable& f);

}  // namespace gapkit
