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

#ifndef MILNORK_RATFUNC_HPP_
#define MILNORK_RATFUNC_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "milnork/factor.hpp"
#include "milnork/poly.hpp"

namespace milnork {

// Nonzero rational function: unit * prod p_i^{e_i}, with p_i distinct
// grlex-monic irreducibles and e_i nonzero integers (negative in the
// denominator). Multiplication is exponent addition.
class RatFunc {
 public:
  RatFunc() = default;

  static RatFunc normalize(const Poly& num, const Poly& den);
  static RatFunc from_poly(const Poly& p) { return normalize(p, Poly::constant(p.ring(), 1)); }
  static RatFunc constant(RingPtr ring, const Scalar& c);
  static RatFunc variable(RingPtr ring, std::size_t index);
  // Trusted constructor: every p_i must already be a normalized irreducible.
  static RatFunc from_factors(RingPtr ring, Scalar unit, std::vector<std::pair<Poly, int>> fs);

  const RingPtr& ring() const { return ring_; }
  const BaseField& field() const { return ring_->field; }
  const Scalar& unit() const { return unit_; }
  const std::vector<std::pair<Poly, int>>& factors() const { return factors_; }
  // Exponent of an irreducible (0 when absent).
  int exponent_of(const Poly& p) const;

  bool is_constant() const { return factors_.empty(); }
  bool is_one() const { return factors_.empty() && unit_ == 1; }

  // Expanded numerator (including the unit) and denominator.
  Poly numerator() const;
  Poly denominator() const;

  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc inverse() const;
  RatFunc pow(long k) const;
  RatFunc operator-() const;
  // Sums may vanish; ZeroElement is raised in that case.
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  // 1 - this; ZeroElement when this is 1.
  RatFunc one_minus() const;

  // Value at a point covering all variables. PoleAtPoint if a denominator
  // factor vanishes. The result may be zero.
  Scalar specialize(const std::vector<Scalar>& point) const;
  // As specialize, but ZeroAtPoint when the value is zero.
  Scalar specialize_unit(const std::vector<Scalar>& point) const;

  std::string to_string() const;

  bool operator==(const RatFunc& o) const {
    return unit_ == o.unit_ && factors_ == o.factors_;
  }
  std::strong_ordering operator<=>(const RatFunc& o) const;

 private:
  void canonicalize();

  RingPtr ring_;
  Scalar unit_ = 1;
  std::vector<std::pair<Poly, int>> factors_;
};

}  // namespace milnork

#endif  // MILNORK_RATFUNC_HPP_
