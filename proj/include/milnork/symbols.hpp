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

#ifndef MILNORK_SYMBOLS_HPP_
#define MILNORK_SYMBOLS_HPP_

#include <map>
#include <string>
#include <vector>

#include "milnork/linalg.hpp"
#include "milnork/ratfunc.hpp"
#include "milnork/valuation.hpp"

namespace milnork {

// Prime factorization of |n| (trial division, then a primality check).
std::vector<std::pair<mpz_class, long>> factor_integer(mpz_class n);

struct SymbolTerm {
  RatFunc f, g;
  long coef = 1;
};

// Formal integer combination of symbols {f, g}.
class K2Class {
 public:
  K2Class() = default;
  explicit K2Class(RingPtr ring) : ring_(std::move(ring)) {}
  static K2Class symbol(const RatFunc& f, const RatFunc& g, long coef = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const RatFunc& f, const RatFunc& g, long coef = 1);
  K2Class operator+(const K2Class& o) const;
  K2Class scaled(long k) const;
  // Distinct irreducibles occurring in any entry.
  std::vector<Poly> irreducibles() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<SymbolTerm> terms_;
};

struct SteinbergResult {
  K2Class reduced;       // empty iff the class is certified zero
  bool zero = false;
  bool budget_exceeded = false;
  long steps = 0;
  // Steinberg instances {h, 1-h} used by the certificate.
  std::vector<RatFunc> instances;
};

SteinbergResult steinberg_reduce(const K2Class& c, long budget = 10000);

// Tame symbol at a rank-one valuation: residue of prod ((-1)^{ab} f^b g^{-a})^coef.
Residue tame_symbol(const Valuation& v, const K2Class& c);
// Norm of a residue down to the constant field (residue fields of places of k(t)).
Scalar residue_norm(const Residue& r);

// Hilbert symbol (x, y)_2 in {1, -1} for nonzero rationals.
int hilbert_symbol_2(const mpq_class& x, const mpq_class& y);

struct K2Verdict {
  enum class Outcome { Zero, NonZero, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::string method;
  // Place descriptor -> residue (only nontrivial ones for NonZero; all
  // inspected places for Zero).
  std::map<std::string, std::string> residues;
  // Constant part over Q: 2-adic Hilbert symbol and odd prime residues.
  bool has_constant_part = false;
  int hilbert2 = 1;
  std::map<std::string, std::string> prime_residues;
  std::string specialization;  // e.g. "t=2"
  std::string wedge_valuation;
  std::vector<std::string> notes;
};

K2Verdict k2_zero(const K2Class& c, long steinberg_budget = 10000);

struct ModUnitsWedge {
  std::size_t degree = 0;
  std::string valuation;
  // Rationalized value vectors, one row per element.
  linalg::QMatrix vectors;
  std::size_t value_rank = 0;
  // Plucker coordinates: maximal minors over increasing column subsets.
  std::vector<std::pair<std::vector<std::size_t>, mpq_class>> minors;
  bool zero = true;

  std::string to_string() const;
};

ModUnitsWedge wedge_mod_units(const Valuation& v, const std::vector<RatFunc>& elems);

}  // namespace milnork

#endif  // MILNORK_SYMBOLS_HPP_
