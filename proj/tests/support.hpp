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

#ifndef MILNORK_TESTS_SUPPORT_HPP_
#define MILNORK_TESTS_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include "milnork/parse.hpp"
#include "milnork/poly.hpp"
#include "milnork/ratfunc.hpp"

namespace testing_support {

using namespace milnork;

inline RatFunc E(const std::string& s, const RingPtr& r) { return parse_expr(s, r); }
inline Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }

// Random polynomial of total degree <= deg with small integer coefficients.
inline Poly random_poly(std::mt19937& rng, const RingPtr& ring, int deg, int coef_bound = 4) {
  std::uniform_int_distribution<int> c(-coef_bound, coef_bound), e(0, deg);
  std::vector<Term> terms;
  int n = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    Monomial m(ring->nvars(), 0);
    int left = e(rng);
    for (std::size_t v = 0; v < m.size() && left > 0; ++v) {
      int k = static_cast<int>(rng() % static_cast<unsigned>(left + 1));
      m[v] = k;
      left -= k;
    }
    terms.push_back({m, ring->field.from_int(c(rng))});
  }
  return Poly::from_terms(ring, terms);
}

// Random univariate polynomial of exact degree in [1, deg] (first variable).
inline Poly random_upoly(std::mt19937& rng, const RingPtr& ring, int deg) {
  for (;;) {
    int d = 1 + static_cast<int>(rng() % static_cast<unsigned>(deg));
    std::vector<Term> terms;
    for (int k = 0; k <= d; ++k) {
      Monomial m(ring->nvars(), 0);
      m[0] = k;
      terms.push_back({m, ring->field.from_int(static_cast<long long>(rng() % 97) - 48)});
    }
    Poly p = Poly::from_terms(ring, terms);
    if (!p.is_zero() && p.degree_in(0) >= 1) return p;
  }
}

inline RatFunc random_ratfunc(std::mt19937& rng, const RingPtr& ring, int deg) {
  for (;;) {
    Poly n = random_poly(rng, ring, deg), d = random_poly(rng, ring, deg);
    if (!n.is_zero() && !d.is_zero()) return RatFunc::normalize(n, d);
  }
}

}  // namespace testing_support

#endif  // MILNORK_TESTS_SUPPORT_HPP_
