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

#ifndef MILNORK_FACTOR_HPP_
#define MILNORK_FACTOR_HPP_

#include <utility>
#include <vector>

#include "milnork/poly.hpp"

namespace milnork {

// unit * prod f_i^{m_i}; every f_i irreducible and grlex-monic, sorted.
struct Factorization {
  Scalar unit = 1;
  std::vector<std::pair<Poly, int>> factors;

  Poly expand(const RingPtr& ring) const;
};

struct FactorCaps {
  // Degree cap for univariate inputs over Q.
  int rational_univariate_degree = 24;
  // Total degree cap for inputs in two or more variables.
  int multivariate_total_degree = 12;
  // Degree caps for the internal univariate image.
  int image_degree_finite = 400;
  int image_degree_rational = 160;
  // Recombination attempts before giving up.
  long max_attempts = 1L << 16;
};

Factorization factor(const Poly& f, const FactorCaps& caps = {});

bool is_irreducible(const Poly& f, const FactorCaps& caps = {});

}  // namespace milnork

#endif  // MILNORK_FACTOR_HPP_
