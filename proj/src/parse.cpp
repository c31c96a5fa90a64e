// Copyright 2026 The Authors.
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

#include "milnork/parse.hpp"

#include <cctype>

#include "milnork/errors.hpp"

namespace milnork {

namespace {

[[noreturn]] void syntax(std::size_t pos, const std::string& what) {
  fail(ErrorKind::SyntaxError, what + " at offset " + std::to_string(pos));
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Numerator/denominator pair; normalized only at the end.
struct Frac {
  Poly num, den;
};

class ExprParser {
 public:
  ExprParser(std::string_view s, const RingPtr& ring) : s_(s), ring_(ring) {}

  Frac run() {
    Frac v = expr();
    skip();
    if (pos_ != s_.size()) syntax(pos_, "unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Frac add(const Frac& a, const Frac& b, bool minus) {
    Poly nb = minus ? -b.num : b.num;
    if (a.den == b.den) return {a.num + nb, a.den};
    return {a.num * b.den + nb * a.den, a.den * b.den};
  }

  Frac expr() {
    Frac v = term();
    for (;;) {
      if (eat('+')) v = add(v, term(), false);
      else if (eat('-')) v = add(v, term(), true);
      else return v;
    }
  }

  Frac term() {
    Frac v = unary();
    for (;;) {
      if (eat('*')) {
        Frac w = unary();
        v = {v.num * w.num, v.den * w.den};
      } else {
        skip();
        std::size_t at = pos_;
        if (!eat('/')) return v;
        Frac w = unary();
        if (w.num.is_zero()) fail(ErrorKind::ZeroElement, "division by zero at offset " + std::to_string(at));
        v = {v.num * w.den, v.den * w.num};
      }
    }
  }

  Frac unary() {
    if (eat('-')) {
      Frac v = unary();
      return {-v.num, v.den};
    }
    if (eat('+')) return unary();
    return power();
  }

  Frac power() {
    Frac base = atom();
    if (!eat('^')) return base;
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) syntax(pos_, "expected integer exponent");
    unsigned long k = std::stoul(std::string(s_.substr(start, pos_ - start)));
    if (k > 4096) syntax(start, "exponent too large");
    Frac r{base.num.pow(static_cast<unsigned>(k)), base.den.pow(static_cast<unsigned>(k))};
    if (neg) {
      if (r.num.is_zero()) fail(ErrorKind::ZeroElement, "zero raised to a negative power");
      std::swap(r.num, r.den);
    }
    return r;
  }

  Frac atom() {
    skip();
    Poly one = Poly::constant(ring_, 1);
    if (pos_ >= s_.size()) syntax(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Frac v = expr();
      if (!eat(')')) syntax(pos_, "expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class n(std::string(s_.substr(start, pos_ - start)));
      return {Poly::constant(ring_, ring_->field.from_rational(mpq_class(n))), one};
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int idx = ring_->index_of(name);
      if (idx < 0) fail(ErrorKind::UnknownVariable, "unknown variable '" + name + "' at offset " + std::to_string(start));
      return {Poly::variable(ring_, static_cast<std::size_t>(idx)), one};
    }
    syntax(pos_, "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const RingPtr& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[' || c == '{') ++depth;
    else if (c == ')' || c == ']' || c == '}') --depth;
    else if (c == sep && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

mpq_class parse_rational(std::string_view s) {
  std::string t = trim(s);
  try {
    mpq_class q(t);
    q.canonicalize();
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    return q;
  } catch (const std::invalid_argument&) {
    fail(ErrorKind::SyntaxError, "not a rational number: '" + t + "'");
  }
}

RingPtr parse_field(std::string_view spec) {
  std::string s = trim(spec);
  std::size_t paren = s.find('(');
  std::string head = trim(s.substr(0, paren));
  std::vector<std::string> vars;
  if (paren != std::string::npos) {
    if (s.back() != ')') syntax(s.size(), "expected ')' in field spec");
    vars = split_top_level(std::string_view(s).substr(paren + 1, s.size() - paren - 2), ',');
    for (const auto& v : vars) {
      if (v.empty() || !ident_start(v[0])) syntax(paren + 1, "bad variable name '" + v + "'");
      for (char c : v)
        if (!ident_char(c)) syntax(paren + 1, "bad variable name '" + v + "'");
    }
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (vars[i] == vars[j]) fail(ErrorKind::InvalidArgument, "duplicate variable '" + vars[i] + "'");
  }
  if (head == "Q") return make_ring(BaseField::rationals(), vars);
  if (head.size() >= 2 && head[0] == 'F') {
    std::string digits = head.substr(1);
    if (!digits.empty() && digits.front() == '<' && digits.back() == '>') digits = digits.substr(1, digits.size() - 2);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) syntax(1, "bad field order");
    if (digits.empty() || digits.size() > 9) syntax(1, "bad field order");
    return make_ring(BaseField::finite(static_cast<std::uint32_t>(std::stoul(digits))), vars);
  }
  syntax(0, "field spec must be F<q>(vars) or Q(vars)");
}

RatFunc parse_expr(std::string_view src, const RingPtr& ring) {
  Frac f = ExprParser(src, ring).run();
  if (f.num.is_zero()) fail(ErrorKind::ZeroElement, "expression is zero");
  return RatFunc::normalize(f.num, f.den);
}

Poly parse_poly(std::string_view src, const RingPtr& ring) {
  Frac f = ExprParser(src, ring).run();
  auto q = f.num.divide_exact(f.den);
  if (!q) fail(ErrorKind::InvalidArgument, "expected a polynomial");
  return *q;
}

}  // namespace milnork
