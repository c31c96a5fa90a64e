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

#ifndef MILNORK_VALUATION_HPP_
#define MILNORK_VALUATION_HPP_

#include <memory>
#include <string>
#include <vector>

#include "milnork/linalg.hpp"
#include "milnork/ratfunc.hpp"

namespace milnork {

using ValueVec = std::vector<long>;

// Lexicographic comparison, first coordinate most significant.
int lex_compare(const ValueVec& a, const ValueVec& b);

// One level of a composite valuation. A level acts on the rational function
// field of `in` and, for units, produces residues in the field of `out`.
struct Level {
  enum class Kind {
    Graph,     // pi = A*w - B, residue substitutes w = B/A
    Monomial,  // weight vector u; residue is the initial form
    Finite,    // univariate pi of degree > 1; residue in k[t]/(pi)
    Prime,     // p-adic Gauss valuation over Q; residue reduces mod p
    Opaque,    // irreducible without a rational residue field; values only
  };
  Kind kind = Kind::Graph;
  RingPtr in, out;
  // Graph, Finite, Opaque.
  Poly pi;
  std::size_t var = 0;
  Poly A, B;
  // Monomial: u is the first row of V; z^c = w^{W c}; w^e = z^{V e}.
  std::vector<long> u;
  std::vector<std::vector<long>> V, W;
  // Prime.
  mpz_class p;

  std::string descriptor() const;
};

// Residue field element.
struct Residue {
  enum class Kind { Function, Extension };
  Kind kind = Kind::Function;
  // Function: element of the rational function field of the residue ring.
  RatFunc func;
  // Extension: coefficients (low to high) of a polynomial mod `modulus`.
  RingPtr base;  // ring of the univariate place
  std::vector<Scalar> coeffs, modulus;

  bool is_one() const;
  std::string to_string() const;
  bool operator==(const Residue& o) const;
};

class Valuation {
 public:
  Valuation() = default;

  static Valuation trivial(RingPtr ring);
  // pi-adic for an irreducible polynomial (normalized internally).
  static Valuation pi_adic(const Poly& pi);
  // Degree place in a set of variables (all variables when empty).
  static Valuation degree_place(RingPtr ring, std::vector<std::size_t> vars = {});
  static Valuation rational_prime(RingPtr ring, const mpz_class& p);
  // Rank-n valuation with value(t_i) = e_i. Each t_i must have a residue
  // through the previous levels that is a graph-type irreducible.
  static Valuation composite(RingPtr ring, const std::vector<RatFunc>& seq);
  // Lexicographic monomial valuation from integer rows (linearly
  // independent, their integer span saturated).
  static Valuation monomial(RingPtr ring, const std::vector<std::vector<long>>& rows);
  static Valuation from_levels(RingPtr ring, std::vector<Level> levels);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Level>& levels() const { return levels_; }
  std::size_t rank() const { return levels_.size(); }
  bool is_trivial() const { return levels_.empty(); }
  // Ring of the residue field of the full valuation.
  RingPtr residue_ring() const { return levels_.empty() ? ring_ : levels_.back().out; }
  bool residue_is_rational_function_field() const;
  // Transcendence degree of Kv over the residue field of k.
  std::size_t residue_trdeg() const;

  ValueVec value(const RatFunc& f) const;
  Residue residue(const RatFunc& f) const;
  // Keep the first rank - drop levels.
  Valuation coarsen(std::size_t drop) const;
  // Whether this is a coarsening of w (prefix of levels).
  bool is_coarsening_of(const Valuation& w) const;
  // An element with value e_i (uniformizer of level i, lifted to K).
  RatFunc uniformizer(std::size_t level) const;

  std::string descriptor() const;
  bool operator==(const Valuation& o) const { return descriptor() == o.descriptor(); }

 private:
  RingPtr ring_;
  std::vector<Level> levels_;
};

// Level primitives used by the valuation code and by certificates.
Level make_graph_level(const Poly& pi);
Level make_monomial_level(RingPtr in, const std::vector<long>& u);
// Unimodular matrix W (as rows) with u * W = e_1; u must be primitive.
std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& u);

// Order of f along one level and the residue of f * uniformizer^{-ord}
// (only meaningful when the level has a residue map).
long level_order(const Level& lv, const RatFunc& f);
RatFunc level_residue_shifted(const Level& lv, const RatFunc& f);

}  // namespace milnork

#endif  // MILNORK_VALUATION_HPP_
