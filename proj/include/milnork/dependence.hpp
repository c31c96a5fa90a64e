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

#ifndef MILNORK_DEPENDENCE_HPP_
#define MILNORK_DEPENDENCE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "milnork/dual.hpp"
#include "milnork/eliminate.hpp"
#include "milnork/symbols.hpp"

namespace milnork {

// ---- Milnor closure ----

struct ClosureOptions {
  std::size_t rounds = 3;
  // Cap on a + b*h candidates per round.
  std::size_t max_candidates = 4000;
  // Constant set for the a + b*h rule, before intersecting with the
  // saturation of T. Empty means {1, -1, 2, -2, 3, -3, 1/2}.
  std::vector<Scalar> constants;
  long k2_budget = 2000;
  bool parallel = true;
};

struct Derivation {
  enum class Rule { Seed, AffineStep, K2Partner };
  Rule rule = Rule::Seed;
  RatFunc element;
  // AffineStep: element = a + b*h.
  Scalar a, b;
  RatFunc h;
  // K2Partner: {s, element} = 0.
  RatFunc partner;
  std::size_t round = 0;

  std::string to_string(const BaseField& F) const;
};

struct MilnorClosedApprox {
  RingPtr ring;
  SubgroupSpec modulus;
  std::vector<KVector> seed;
  // Preimages whose images span the generated subspace, with derivations.
  std::vector<Derivation> members;
  std::vector<KVector> basis;
  std::vector<RatFunc> frontier;
  std::size_t rounds_used = 0, budget = 0;
  bool budget_exceeded = false;

  std::size_t dim() const { return basis.size(); }
  bool contains(const KVector& x) const;
  bool contains(const RatFunc& x) const { return contains(KVector::of(x, modulus)); }
};

// Seeds are given by preimages in K^x. The default pool consists of the
// irreducible factors of the seeds.
MilnorClosedApprox milnor_closure(const RingPtr& ring, const std::vector<RatFunc>& seed, const SubgroupSpec& modulus,
                                  std::optional<std::vector<RatFunc>> pool = std::nullopt,
                                  const ClosureOptions& opts = {});

// ---- algebraic dependence ----

struct DependenceVerdict {
  enum class Outcome { Independent, Dependent };
  Outcome outcome = Outcome::Dependent;
  // Independent.
  Valuation valuation;
  ModUnitsWedge wedge;
  // Dependent: polynomial in `names`, one variable per element.
  RingPtr relation_ring;
  Poly relation;
  std::string relation_text;
};

// Variable names for elements, avoiding the ring's own names.
std::vector<std::string> element_names(const RingPtr& ring, std::size_t n);

DependenceVerdict dependence_decide(const std::vector<RatFunc>& elems, const EliminationOptions& opts = {});
// Re-checks a certificate without reference to how it was found.
bool verify_dependence(const std::vector<RatFunc>& elems, const DependenceVerdict& v);
// Whether P(elems) = 0, for P in the ring of element names.
bool relation_vanishes(const Poly& rel, const std::vector<RatFunc>& elems);

// ---- subfields and lattices ----

struct SubfieldDesc {
  RingPtr ring;
  std::vector<RatFunc> generators;
  std::vector<RatFunc> basis;  // transcendence basis among the generators
  std::vector<Poly> relation_ideal;
  bool relatively_closed = false;
  std::string closure_note;

  std::size_t trdeg() const { return basis.size(); }
  std::string to_string() const;
};

SubfieldDesc relative_algebraic_closure(const RingPtr& ring, const std::vector<RatFunc>& gens,
                                        const std::vector<RatFunc>& extra_candidates = {},
                                        const EliminationOptions& opts = {});

// t algebraic over L (equivalently in L, since L is relatively closed).
bool algebraic_over(const RatFunc& t, const SubfieldDesc& L, const EliminationOptions& opts = {});
bool subfield_leq(const SubfieldDesc& a, const SubfieldDesc& b, const EliminationOptions& opts = {});

struct MembershipVerdict {
  bool in_L = false;
  RatFunc lift;    // element whose image is a positive multiple of x
  long multiple = 1;
  // NotInL certificate.
  Valuation valuation;
  ValueVec value;
  std::vector<std::string> trace;
};

MembershipVerdict geometric_membership(const KVector& x, const SubfieldDesc& L, const EliminationOptions& opts = {});
// Re-verifies a NotInL certificate: visible, trivial on L, nonzero value.
bool verify_exclusion(const KVector& x, const SubfieldDesc& L, const MembershipVerdict& m);

struct GeomLattice {
  std::vector<SubfieldDesc> nodes;
  std::vector<std::vector<bool>> order;      // order[i][j]: nodes[i] <= nodes[j]
  std::vector<std::vector<bool>> kcal_order;  // K_{L_i|k} inside K_{L_j|k}
  // Index into nodes, or -1 when the result is not in the family.
  std::vector<std::vector<int>> meet, join;
  bool embedding_holds = false;

  std::string hasse() const;
};

GeomLattice geometric_lattice(const std::vector<SubfieldDesc>& nodes, const EliminationOptions& opts = {});

// ---- transcendence degree ----

struct TrdegCertificate {
  std::size_t d = 0;
  Valuation valuation;
  std::vector<std::string> split;  // variables left to the residue field
  FunctionalSpace D, ambient, center;
  bool conditions_hold = false;
};

TrdegCertificate trdeg_certificate(const RingPtr& ring, std::size_t d);
// Abhyankar bound: rational rank of vK / vk from the certificate.
std::size_t verify_trdeg(const TrdegCertificate& c);

// ---- prime subfield ----

struct ProbeReport {
  bool characteristic_zero = false;
  bool torsion = false;  // image of t in K is zero
  std::vector<RatFunc> chain;
  std::vector<bool> chain_certified;
  std::vector<std::string> derivations;
  bool two_in_closure = false;
  // Excluding valuation for transcendental t.
  std::optional<Valuation> excluding;
  ValueVec excluding_value;
  std::string note;
};

ProbeReport prime_subfield_probe(const RatFunc& t, const ClosureOptions& opts = {});

}  // namespace milnork

#endif  // MILNORK_DEPENDENCE_HPP_
