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

#ifndef MILNORK_POLY_HPP_
#define MILNORK_POLY_HPP_

#include <compare>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "milnork/field.hpp"

namespace milnork {

// Constant field plus an ordered list of variable names. Shared by every
// polynomial and rational function of one field context.
struct Ring {
  BaseField field;
  std::vector<std::string> vars;

  std::size_t nvars() const { return vars.size(); }
  // Index of a variable name, or -1.
  int index_of(const std::string& name) const;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(BaseField field, std::vector<std::string> vars);

// Exponent vector; length equals the ring arity.
using Monomial = std::vector<int>;

// Graded-lexicographic comparison, first variable most significant.
int grlex_compare(const Monomial& a, const Monomial& b);

struct Term {
  Monomial exps;
  Scalar coef;
};

// Sparse multivariate polynomial. Terms are kept sorted by decreasing
// grlex order with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly constant(RingPtr ring, const Scalar& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, Monomial exps, const Scalar& c);
  // Builds from arbitrary (possibly repeated, unsorted) terms.
  static Poly from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const BaseField& field() const { return ring_->field; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Scalar constant_term() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;
  // Lowest exponent of `var` over all terms.
  int low_degree_in(std::size_t var) const;
  const Term& leading() const { return terms_.front(); }
  const Scalar& leading_coef() const { return terms_.front().coef; }
  // Mask of variables that occur.
  std::vector<bool> support() const;
  std::size_t num_vars_used() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Scalar& c) const;
  Poly pow(unsigned k) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Quotient when `d` divides exactly, otherwise nullopt.
  std::optional<Poly> divide_exact(const Poly& d) const;
  // Leading coefficient becomes 1.
  Poly monic() const;
  Poly derivative(std::size_t var) const;

  Scalar evaluate(const std::vector<Scalar>& point) const;
  // Replace variable `var` by `value` (a polynomial in the same ring).
  Poly substitute(std::size_t var, const Poly& value) const;
  // Coefficients c_k with this = sum c_k var^k; c_k do not contain var.
  std::vector<Poly> coefficients_in(std::size_t var) const;
  // Re-embed into another ring; `var_map[i]` is the target index of var i.
  Poly mapped(RingPtr target, const std::vector<std::size_t>& var_map) const;

  // Canonical text in grlex order, e.g. "x^2 - 3*y + 1".
  std::string to_string() const;
  // Text with terms ordered by a custom strict-weak "comes first" predicate.
  std::string to_string(const std::function<bool(const Monomial&, const Monomial&)>& first) const;

  bool operator==(const Poly& o) const;
  // Total order used for canonical sorting of factor lists.
  std::strong_ordering operator<=>(const Poly& o) const;

 private:
  void normalize();

  RingPtr ring_;
  std::vector<Term> terms_;
};

std::string monomial_to_string(const Ring& ring, const Monomial& m);

}  // namespace milnork

#endif  // MILNORK_POLY_HPP_
