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

#ifndef MILNORK_ELIMINATE_HPP_
#define MILNORK_ELIMINATE_HPP_

#include <vector>

#include "milnork/factor.hpp"
#include "milnork/poly.hpp"

namespace milnork {

struct EliminationOptions {
  // Cap on the degree of any intermediate resultant in a single variable.
  int max_var_degree = 48;
  FactorCaps factor_caps{};
};

// Resultant of a and b with respect to `var` (Sylvester determinant,
// fraction-free).
Poly resultant(const Poly& a, const Poly& b, std::size_t var);

// Iterated resultants eliminating `vars`. When every remaining variable w is
// defined by some relation that is linear in w with coefficients free of the
// other remaining variables, factors that do not vanish on that graph are
// dropped (exact back-substitution). Results are square-free, free of the
// eliminated variables and scaled monic in relation order.
std::vector<Poly> eliminate(const std::vector<Poly>& relations, const std::vector<std::size_t>& vars,
                            const EliminationOptions& opts = {});

// Lexicographic order with the last variable most significant; used for
// printing and scaling relations.
bool relation_order_first(const Monomial& a, const Monomial& b);
Poly relation_monic(const Poly& p);
std::string relation_to_string(const Poly& p);

}  // namespace milnork

#endif  // MILNORK_ELIMINATE_HPP_
