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

#ifndef MILNORK_PARSE_HPP_
#define MILNORK_PARSE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "milnork/poly.hpp"
#include "milnork/ratfunc.hpp"

namespace milnork {

// "F5(x,y)", "F4(t)", "Q(t)", "Q".
RingPtr parse_field(std::string_view spec);

// Expression grammar: integers, variables, + - * / ^, parentheses.
// SyntaxError messages carry the byte offset of the problem.
RatFunc parse_expr(std::string_view src, const RingPtr& ring);
// Same grammar, but the value must be a polynomial.
Poly parse_poly(std::string_view src, const RingPtr& ring);

// Split on a separator at bracket depth zero; pieces are trimmed.
std::vector<std::string> split_top_level(std::string_view s, char sep);
std::string trim(std::string_view s);
// Exact rational literal such as "3", "-2", "3/2".
mpq_class parse_rational(std::string_view s);

}  // namespace milnork

#endif  // MILNORK_PARSE_HPP_
