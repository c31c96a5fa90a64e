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

#ifndef MILNORK_DUAL_HPP_
#define MILNORK_DUAL_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "milnork/linalg.hpp"
#include "milnork/ratfunc.hpp"
#include "milnork/valuation.hpp"

namespace milnork {

struct SubgroupSpec {
  enum class Kind { Trivial, Constants, UnitsOf, PrincipalUnitsOf };
  Kind kind = Kind::Constants;
  Valuation v;  // UnitsOf, PrincipalUnitsOf

  static SubgroupSpec trivial() { return {Kind::Trivial, {}}; }
  static SubgroupSpec constants() { return {Kind::Constants, {}}; }
  static SubgroupSpec units_of(Valuation v) { return {Kind::UnitsOf, std::move(v)}; }
  static SubgroupSpec principal_units_of(Valuation v) { return {Kind::PrincipalUnitsOf, std::move(v)}; }

  // Exact membership where decidable; principal units over composite
  // valuations are tested level by level.
  bool contains(const RatFunc& x) const;
  std::string to_string() const;
};

// Element of Q (x) K^x / T.
class KVector {
 public:
  KVector() = default;
  static KVector of(const RatFunc& x, SubgroupSpec modulus = SubgroupSpec::constants());

  const RingPtr& ring() const { return ring_; }
  const std::vector<std::pair<Poly, mpq_class>>& support() const { return support_; }
  // Over Q and modulus not containing constants: prime -> exponent. The
  // sign is torsion and drops out.
  const std::map<mpz_class, mpq_class>& constant_part() const { return constants_; }
  const SubgroupSpec& modulus() const { return modulus_; }

  KVector operator+(const KVector& o) const;
  KVector scaled(const mpq_class& c) const;
  bool is_zero() const { return support_.empty() && constants_.empty(); }
  std::string to_string() const;

 private:
  void add(const Poly& p, const mpq_class& e);
  RingPtr ring_;
  std::vector<std::pair<Poly, mpq_class>> support_;
  std::map<mpz_class, mpq_class> constants_;
  SubgroupSpec modulus_;
};

struct FunctionalAtom {
  Valuation v;
  std::vector<mpq_class> row;  // over Q (x) vK, one entry per level
  mpq_class coef = 1;
};

// Homomorphism K^x -> Q supported on finitely many valuations.
class Functional {
 public:
  Functional() = default;
  explicit Functional(RingPtr ring, SubgroupSpec modulus = SubgroupSpec::constants())
      : ring_(std::move(ring)), modulus_(std::move(modulus)) {}
  // The i-th lexicographic coordinate of v.
  static Functional coordinate(const Valuation& v, std::size_t i = 0);
  static Functional from_row(const Valuation& v, std::vector<mpq_class> row);

  const RingPtr& ring() const { return ring_; }
  const std::vector<FunctionalAtom>& atoms() const { return atoms_; }
  const SubgroupSpec& modulus() const { return modulus_; }

  mpq_class operator()(const RatFunc& x) const;
  Functional operator+(const Functional& o) const;
  Functional scaled(const mpq_class& c) const;

  // Canonical form: coordinate i of a chain w equals the last coordinate
  // of the prefix of w of length i + 1. Keyed by prefix descriptor.
  struct Coord {
    Valuation prefix;
    mpq_class coef;
  };
  std::map<std::string, Coord> canonical() const;
  bool is_zero() const { return canonical().empty(); }
  // Vanishes on the modulus (checked structurally).
  bool respects_modulus() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<FunctionalAtom> atoms_;
  SubgroupSpec modulus_;
};

mpq_class pair(const KVector& x, const Functional& f);

class FunctionalSpace {
 public:
  FunctionalSpace() = default;
  // Drops dependent generators; independence is decided exactly on the
  // canonical coordinates.
  static FunctionalSpace span(RingPtr ring, const std::vector<Functional>& gens, std::string family = "");

  const RingPtr& ring() const { return ring_; }
  const std::vector<Functional>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const std::string& family() const { return family_; }
  bool contains(const Functional& f) const;
  // Combination sum c_i basis_i.
  Functional combine(const std::vector<mpq_class>& c) const;

 private:
  RingPtr ring_;
  std::vector<Functional> basis_;
  std::string family_;
};

struct WitnessPolicy {
  std::size_t pool = 256;
  bool parallel = true;
};

struct AlternatingVerdict {
  enum class Outcome { Holds, Fails, Unknown };
  Outcome outcome = Outcome::Unknown;
  std::string reason;
  // Fails: x + y = 1 and f(x) g(y) != f(y) g(x).
  RatFunc x, y;
  mpq_class defect;
  std::size_t witnesses_tried = 0;
};

// f(x) g(y) - f(y) g(x).
mpq_class defect(const Functional& f, const Functional& g, const RatFunc& x, const RatFunc& y);

// Deterministic pool of elements x (x != 0, 1) built from the variables
// and the uniformizers of the given functionals.
std::vector<RatFunc> witness_pool(const RingPtr& ring, const std::vector<Functional>& fs, std::size_t size);

AlternatingVerdict decide_alternating(const Functional& f, const Functional& g, const WitnessPolicy& policy = {});

struct CenterCentralizer {
  FunctionalSpace center, centralizer;
  std::size_t witnesses = 0;
};

CenterCentralizer center_and_centralizer(const FunctionalSpace& space, const FunctionalSpace& ambient,
                                         const WitnessPolicy& policy = {});

Valuation minimal_valuation(const FunctionalSpace& I);

struct VisibilityVerdict {
  bool visible = false;
  std::string reason;
  std::vector<std::string> trace;
};

VisibilityVerdict visibility_check(const Valuation& v, const SubgroupSpec& T, const FunctionalSpace& ambient);

// Membership tests for the inertia-like and decomposition-like subspaces,
// certified structurally from the canonical coordinates.
bool in_inertia(const Functional& f, const Valuation& v);
bool in_decomposition(const Functional& f, const Valuation& v);

struct WitnessingValuation {
  Valuation v;
  FunctionalSpace I;
  std::size_t codim = 0;
};

WitnessingValuation find_witnessing_valuation(const FunctionalSpace& D, const std::vector<Valuation>& pool,
                                              const WitnessPolicy& policy = {});

// Saturation of v((I_v cap H)^perp) computed directly and from sampled
// elements of H^perp over the probe set. Returns both Q-bases.
struct SaturationCheck {
  linalg::QMatrix direct, sampled;
  bool agree = false;
};

SaturationCheck v_perp_saturation(const Valuation& v, const FunctionalSpace& H, const std::vector<RatFunc>& probes);

// A functional vanishing on constants but not on the principal units of v,
// with the principal unit that shows it.
struct OutsideDecomposition {
  Functional f;
  RatFunc unit;
};

std::optional<OutsideDecomposition> functional_outside_decomposition(const Valuation& v);

}  // namespace milnork

#endif  // MILNORK_DUAL_HPP_
