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

#include "gapkit/scform.hpp"

#include <algorithm>
#include <cctype>

namespace gapkit {

namespace {

std::string kind_label(ScformError::Kind kind) {
  switch (kind) {
    case ScformError::Kind::syntax: return "syntax error";
    case ScformError::Kind::index_range: return "variable index error";
    case ScformError::Kind::value_range: return "value error";
    case ScformError::Kind::header: return "header error";
    case ScformError::Kind::value_count: return "value count error";
  }
  return "error";
}

}  // namespace

ScformError::ScformError(Kind kind, unsigned line, unsigned col,
                         const std::string& msg)
    : std::runtime_error(kind_label(kind) + " at line " +
                         std::to_string(line) + ", column " +
                         std::to_string(col) + ": " + msg),
      kind_(kind),
      line_(line),
      col_(col) {}

namespace {

struct Token {
  enum class Kind { number, x, caret, plus, mult, end };
  Kind kind;
  unsigned long long value = 0;  // for number
  unsigned line = 1;
  unsigned col = 1;
  std::string text;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(ScformError::Kind kind, const Token& at,
                         const std::string& msg) const {
    throw ScformError(kind, at.line, at.col, msg);
  }

 private:
  void advance() {
    skip_ws();
    current_ = Token{Token::Kind::end, 0, line_, col_, "end of input"};
    if (pos_ >= text_.size()) return;
    char c = text_[pos_];
    if (c >= '0' && c <= '9') {
      current_.kind = Token::Kind::number;
      unsigned long long v = 0;
      std::size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') {
        v = v * 10 + unsigned(text_[pos_] - '0');
        if (v > 1000000000ull)
          throw ScformError(ScformError::Kind::syntax, line_, col_,
                            "number too large");
        bump();
      }
      current_.value = v;
      current_.text = std::string(text_.substr(start, pos_ - start));
      return;
    }
    if (c == 'x') {
      current_.kind = Token::Kind::x;
      current_.text = "x";
      bump();
      return;
    }
    if (c == '^') {
      current_.kind = Token::Kind::caret;
      current_.text = "^";
      bump();
      return;
    }
    if (c == '+') {
      current_.kind = Token::Kind::plus;
      current_.text = "+";
      bump();
      return;
    }
    // UTF-8 circled plus
    if (c == '\xE2' && pos_ + 3 <= text_.size() &&
        text_.substr(pos_, 3) == "\xE2\x8A\x95") {
      current_.kind = Token::Kind::plus;
      current_.text = "\xE2\x8A\x95";
      bump();
      bump();
      bump();
      return;
    }
    if (c == '*' || c == '.') {
      current_.kind = Token::Kind::mult;
      current_.text = std::string(1, c);
      bump();
      return;
    }
    throw ScformError(ScformError::Kind::syntax, line_, col_,
                      "unexpected character '" + std::string(1, c) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        bump();
      } else {
        break;
      }
    }
    // token starts here
    current_.line = line_;
    current_.col = col_;
  }

  void bump() {
    ++pos_;
    ++col_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  unsigned line_ = 1;
  unsigned col_ = 1;
  Token current_;
};

class Parser {
 public:
  Parser(std::string_view text, unsigned k, unsigned n)
      : lex_(text), k_(k), n_(n) {}

  SCExpr parse() {
    SCExpr expr;
    expr.k = k_;
    expr.n = n_;
    expr.terms.push_back(term());
    while (lex_.peek().kind == Token::Kind::plus) {
      lex_.take();
      expr.terms.push_back(term());
    }
    if (lex_.peek().kind != Token::Kind::end)
      lex_.fail(ScformError::Kind::syntax, lex_.peek(),
                "expected '+' or end of expression, got '" +
                    lex_.peek().text + "'");
    return expr;
  }

 private:
  SCTerm term() {
    SCTerm t;
    t.coeff = 1;
    bool saw_mult = false;
    if (lex_.peek().kind == Token::Kind::number) {
      Token c = lex_.take();
      if (c.value >= k_)
        lex_.fail(ScformError::Kind::value_range, c,
                  "constant " + std::to_string(c.value) + " not below k=" +
                      std::to_string(k_));
      t.coeff = std::uint8_t(c.value);
      if (lex_.peek().kind == Token::Kind::mult) {
        lex_.take();
        saw_mult = true;
      }
      if (!saw_mult) return t;  // bare constant term
      if (lex_.peek().kind != Token::Kind::x) return t;  // dangling mult
    } else if (lex_.peek().kind != Token::Kind::x) {
      lex_.fail(ScformError::Kind::syntax, lex_.peek(),
                "expected a term, got '" + lex_.peek().text + "'");
    }
    while (lex_.peek().kind == Token::Kind::x) factor(t);
    return t;
  }

  void factor(SCTerm& t) {
    lex_.take();  // 'x'
    Token idx = expect(Token::Kind::number, "variable index");
    if (idx.value < 1 || idx.value > n_)
      lex_.fail(ScformError::Kind::index_range, idx,
                "variable index " + std::to_string(idx.value) +
                    " out of range 1.." + std::to_string(n_));
    expect(Token::Kind::caret, "'^'");
    Token alpha = expect(Token::Kind::number, "indicator value");
    if (alpha.value >= k_)
      lex_.fail(ScformError::Kind::value_range, alpha,
                "constant " + std::to_string(alpha.value) + " not below k=" +
                    std::to_string(k_));
    for (const SCFactor& f : t.factors)
      if (f.var == idx.value)
        lex_.fail(ScformError::Kind::syntax, idx,
                  "variable x" + std::to_string(idx.value) +
                      " repeated in one term");
    t.factors.push_back(SCFactor{unsigned(idx.value), std::uint8_t(alpha.value)});
  }

  Token expect(Token::Kind kind, const std::string& what) {
    if (lex_.peek().kind != kind)
      lex_.fail(ScformError::Kind::syntax, lex_.peek(),
                "expected " + what + ", got '" + lex_.peek().text + "'");
    return lex_.take();
  }

  Lexer lex_;
  unsigned k_;
  unsigned n_;
};

}  // namespace

SCExpr parse_sc(std::string_view text, unsigned k, unsigned n) {
  checked_pow(k, n);  // validates k and the table size
  return Parser(text, k, n).parse();
}

KTable eval_sc(const SCExpr& expr) {
  const unsigned k = expr.k;
  const unsigned n = expr.n;
  std::vector<std::uint8_t> table(checked_pow(k, n), 0);
  std::vector<std::size_t> strides(n + 1, 1);
  for (unsigned i = n; i >= 1; --i)
    strides[i] = (i == n) ? 1 : strides[i + 1] * k;

  for (const SCTerm& term : expr.terms) {
    if (term.coeff == 0) continue;
    std::size_t base = 0;
    std::vector<bool> bound(n + 1, false);
    for (const SCFactor& f : term.factors) {
      base += std::size_t(f.alpha) * strides[f.var];
      bound[f.var] = true;
    }
    std::vector<std::size_t> free_strides;
    for (unsigned i = 1; i <= n; ++i)
      if (!bound[i]) free_strides.push_back(strides[i]);

    std::size_t points = 1;
    for (std::size_t t = 0; t < free_strides.size(); ++t) points *= k;
    for (std::size_t c = 0; c < points; ++c) {
      std::size_t idx = base;
      std::size_t tmp = c;
      for (std::size_t p = free_strides.size(); p-- > 0;) {
        idx += (tmp % k) * free_strides[p];
        tmp /= k;
      }
      table[idx] = std::uint8_t((table[idx] + term.coeff) % k);
    }
  }
  return KTable(k, n, std::move(table));
}

KTable parse_expr(std::string_view text, unsigned k, unsigned n) {
  return eval_sc(parse_sc(text, k, n));
}

std::string print_sc(const KTable& f) {
  const unsigned k = f.k();
  const unsigned n = f.n();
  if (n == 0) return std::to_string(f[0]);

  std::string out;
  std::vector<std::uint8_t> digits(n, 0);
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (f[m] != 0) {
      if (!out.empty()) out += " + ";
      if (f[m] != 1) {
        out += std::to_string(f[m]);
        out += '*';
      }
      for (unsigned i = 1; i <= n; ++i) {
        if (i > 1) out += ' ';
        out += 'x';
        out += std::to_string(i);
        out += '^';
        out += std::to_string(digits[i - 1]);
      }
    }
    for (unsigned pos = n; pos-- > 0;) {
      if (std::uint8_t(digits[pos] + 1) < k) {
        ++digits[pos];
        break;
      }
      digits[pos] = 0;
    }
  }
  return out.empty() ? "0" : out;
}

namespace {

struct FileToken {
  std::string text;
  unsigned line;
  unsigned col;
};

std::vector<FileToken> file_tokens(std::string_view text) {
  std::vector<FileToken> out;
  unsigned line = 1, col = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++col;
      ++i;
      continue;
    }
    FileToken t{{}, line, col};
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
           text[i] != '#') {
      t.text += text[i];
      ++i;
      ++col;
    }
    out.push_back(std::move(t));
  }
  return out;
}

unsigned long long parse_nat(const FileToken& t, ScformError::Kind kind,
                             const std::string& what) {
  if (t.text.empty() ||
      !std::all_of(t.text.begin(), t.text.end(),
                   [](char c) { return c >= '0' && c <= '9'; }) ||
      t.text.size() > 9)
    throw ScformError(kind, t.line, t.col,
                      "expected " + what + ", got '" + t.text + "'");
  return std::stoull(t.text);
}

}  // namespace

KTable read_table(std::string_view text) {
  auto tokens = file_tokens(text);
  if (tokens.size() < 2)
    throw ScformError(ScformError::Kind::header, 1, 1,
                      "expected header 'k n'");
  unsigned long long k = parse_nat(tokens[0], ScformError::Kind::header, "k");
  unsigned long long n = parse_nat(tokens[1], ScformError::Kind::header, "n");
  std::size_t len;
  try {
    len = checked_pow(unsigned(k), unsigned(n));
  } catch (const std::invalid_argument& e) {
    throw ScformError(ScformError::Kind::header, tokens[0].line,
                      tokens[0].col, e.what());
  }
  const std::size_t got = tokens.size() - 2;
  if (got != len)
    throw ScformError(ScformError::Kind::value_count, tokens[1].line,
                      tokens[1].col,
                      "expected " + std::to_string(len) + " values, got " +
                          std::to_string(got));
  std::vector<std::uint8_t> values(len);
  for (std::size_t i = 0; i < len; ++i) {
    const FileToken& t = tokens[2 + i];
    unsigned long long v =
        parse_nat(t, ScformError::Kind::value_range, "a value");
    if (v >= k)
      throw ScformError(ScformError::Kind::value_range, t.line, t.col,
                        "value " + std::to_string(v) + " not below k=" +
                            std::to_string(k));
    values[i] = std::uint8_t(v);
  }
  return KTable(unsigned(k), unsigned(n), std::move(values));
}

std::string write_table(const KTable& f) {
  std::string out = std::to_string(f.k()) + " " + std::to_string(f.n()) + "\n";
  for (std::size_t m = 0; m < f.size(); ++m) {
    if (m != 0) out += ' ';
    out += std::to_string(f[m]);
  }
  out += '\n';
  return out;
}

}  // namespace gapkit
