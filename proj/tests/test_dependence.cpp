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

#include <doctest.h>

#include "milnork/dependence.hpp"
#include "milnork/errors.hpp"
#include "support.hpp"

using namespace milnork;
using namespace testing_support;

namespace {

// Jacobian rank at a few integer points; equals the transcendence degree
// in characteristic zero for generic points.
std::size_t jacobian_rank(const std::vector<RatFunc>& fs, std::mt19937& rng) {
  const RingPtr& r = fs[0].ring();
  std::size_t best = 0;
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Scalar> pt;
    for (std::size_t i = 0; i < r->nvars(); ++i) pt.push_back(static_cast<long>(rng() % 41) - 20);
    linalg::QMatrix J;
    try {
      for (const auto& f : fs) {
        Poly n = f.numerator(), d = f.denominator();
        Scalar dv = d.evaluate(pt);
        if (dv == 0) throw Error(ErrorKind::PoleAtPoint, "pole");
        linalg::QVector row;
        for (std::size_t v = 0; v < r->nvars(); ++v)
          row.push_back((n.derivative(v).evaluate(pt) * dv - n.evaluate(pt) * d.derivative(v).evaluate(pt)) /
                        (dv * dv));
        J.push_back(row);
      }
    } catch (const Error&) {
      continue;
    }
    best = std::max(best, linalg::rank(J, r->nvars()));
  }
  return best;
}

}  // namespace

TEST_CASE("dependence examples") {
  RingPtr r = parse_field("F5(x,y)");
  auto ind = dependence_decide({E("x", r), E("y", r)});
  CHECK(ind.outcome == DependenceVerdict::Outcome::Independent);
  CHECK(ind.wedge.to_string() == "(1,0)^(0,1)");
  auto d1 = dependence_decide({E("x", r), E("x^2+1", r)});
  CHECK(d1.outcome == DependenceVerdict::Outcome::Dependent);
  CHECK(d1.relation_text == "b - a^2 - 1");
  auto d2 = dependence_decide({E("x", r), E("y", r), E("x*y", r)});
  CHECK(d2.relation_text == "c - a*b");
  CHECK(verify_dependence({E("x", r), E("x^2+1", r)}, d1));
  CHECK(verify_dependence({E("x", r), E("y", r)}, ind));
}

TEST_CASE("dependence agrees with the Jacobian criterion over Q") {
  std::mt19937 rng(13);
  RingPtr r = parse_field("Q(x,y,z)");
  int dependent = 0;
  for (int it = 0; it < 30; ++it) {
    std::vector<RatFunc> fs;
    std::size_t n = 2 + rng() % 2;
    // Mix generic elements with ones built from earlier entries.
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && rng() % 3 == 0) {
        fs.push_back(fs[0] * fs[0] + RatFunc::constant(r, static_cast<long>(1 + rng() % 3)));
      } else {
        Poly p = random_poly(rng, r, 2);
        if (p.is_constant()) p = p + Poly::variable(r, rng() % 3);
        fs.push_back(RatFunc::from_poly(p));
      }
    }
    std::size_t jr = jacobian_rank(fs, rng);
    DependenceVerdict v;
    try {
      v = dependence_decide(fs);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::CertificateNotFound);
      continue;
    }
    bool indep = v.outcome == DependenceVerdict::Outcome::Independent;
    CHECK(indep == (jr == n));
    CHECK(verify_dependence(fs, v));
    dependent += indep ? 0 : 1;
  }
  CHECK(dependent > 0);
}

TEST_CASE("Milnor closure stays geometric") {
  RingPtr r = parse_field("F5(x,y)");
  ClosureOptions o;
  o.rounds = 2;
  auto m = milnor_closure(r, {E("x", r)}, SubgroupSpec::constants(), std::nullopt, o);
  CHECK(m.contains(E("x+1", r)));
  CHECK_FALSE(m.contains(E("y", r)));
  CHECK_FALSE(m.contains(E("x+y", r)));
  for (const auto& d : m.members) CHECK(d.element.numerator().degree_in(1) == 0);
  CHECK(milnor_closure(r, {}, SubgroupSpec::constants()).dim() == 0);

  RingPtr q = parse_field("Q(t)");
  auto p = prime_subfield_probe(E("t", q));
  CHECK(p.two_in_closure);
  std::vector<std::string> chain;
  for (const auto& c : p.chain) chain.push_back(c.to_string());
  CHECK(chain == std::vector<std::string>{"t + 1", "t + 2", "(t + 2)/t", "2/t", "2"});
  for (bool b : p.chain_certified) CHECK(b);
}

TEST_CASE("relative algebraic closure and the subfield order") {
  RingPtr r = parse_field("F5(x,y)");
  SubfieldDesc a = relative_algebraic_closure(r, {E("x^2", r)});
  CHECK(a.to_string() == "acl(x)");
  CHECK(a.trdeg() == 1);
  CHECK(relative_algebraic_closure(r, {E("x", r), E("y", r)}).trdeg() == 2);
  SubfieldDesc k = relative_algebraic_closure(r, {});
  CHECK(k.to_string() == "k");
  CHECK(algebraic_over(E("x^3 + x", r), a));
  CHECK_FALSE(algebraic_over(E("y", r), a));
  SubfieldDesc xy = relative_algebraic_closure(r, {E("x*y", r)});
  CHECK(subfield_leq(k, a));
  CHECK(subfield_leq(a, relative_algebraic_closure(r, {E("x", r), E("y", r)})));
  CHECK_FALSE(subfield_leq(a, xy));
  CHECK_FALSE(subfield_leq(xy, a));
}

TEST_CASE("geometric membership certificates") {
  RingPtr r = parse_field("F5(x,y)");
  SubfieldDesc L = relative_algebraic_closure(r, {E("x", r)});
  CHECK(geometric_membership(KVector::of(E("x", r)), L).in_L);
  CHECK(geometric_membership(KVector::of(E("x^2+1", r)), L).in_L);
  for (const char* s : {"y", "x*y^2"}) {
    KVector v = KVector::of(E(s, r));
    auto m = geometric_membership(v, L);
    REQUIRE_FALSE(m.in_L);
    CHECK(m.valuation.descriptor() == "pi:y");
    CHECK(verify_exclusion(v, L, m));
  }
  auto m = geometric_membership(KVector::of(E("y", r)), L);
  CHECK(m.value == ValueVec{1});
  CHECK(geometric_membership(KVector::of(E("x*y^2", r)), L).value == ValueVec{2});
  SubfieldDesc M = relative_algebraic_closure(r, {E("x*y", r)});
  auto mx = geometric_membership(KVector::of(E("x", r)), M);
  CHECK_FALSE(mx.in_L);
  CHECK(verify_exclusion(KVector::of(E("x", r)), M, mx));
}

TEST_CASE("five-node geometric lattice") {
  RingPtr r = parse_field("F5(x,y)");
  std::vector<SubfieldDesc> nodes;
  for (auto gens : std::vector<std::vector<std::string>>{{}, {"x"}, {"y"}, {"x*y"}, {"x", "y"}}) {
    std::vector<RatFunc> g;
    for (const auto& s : gens) g.push_back(E(s, r));
    nodes.push_back(relative_algebraic_closure(r, g));
  }
  GeomLattice G = geometric_lattice(nodes);
  CHECK(G.embedding_holds);
  CHECK(G.order == G.kcal_order);
  CHECK(G.meet[1][2] == 0);
  CHECK(G.join[1][2] == 4);
  CHECK(G.join[1][3] == 4);
  CHECK(G.hasse() == "k < acl(x)\nk < acl(y)\nk < acl(x*y)\nacl(x) < acl(x, y)\nacl(y) < acl(x, y)\nacl(x*y) < acl(x, y)\n");
  // A non-closed node is rejected.
  SubfieldDesc open = nodes[1];
  open.generators = {E("x^2", r)};
  open.basis = open.generators;
  open.relatively_closed = false;
  try {
    (void)geometric_lattice({nodes[0], open});
    FAIL("expected NotClosedNode");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotClosedNode);
  }
}

TEST_CASE("transcendence degree certificates") {
  RingPtr r = parse_field("F5(x,y,z)");
  auto c = trdeg_certificate(r, 2);
  CHECK(c.conditions_hold);
  CHECK(c.valuation.descriptor() == "comp:[x, y]");
  CHECK(c.split == std::vector<std::string>{"z"});
  CHECK(c.center.dim() == 2);
  CHECK(verify_trdeg(c) == 2);
  auto d = trdeg_certificate(parse_field("F5(t,u)"), 1);
  CHECK(d.conditions_hold);
  CHECK(d.center.dim() == 1);
  try {
    (void)trdeg_certificate(parse_field("F5(t)"), 1);
    FAIL("expected DimensionTooSmall");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DimensionTooSmall);
  }
}
