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

// Base layer: finite fields, polynomials, factorization, rational
// functions, exact linear algebra, parsing and elimination.
#include <doctest.h>

#include "milnork/eliminate.hpp"
#include "milnork/errors.hpp"
#include "milnork/factor.hpp"
#include "milnork/field.hpp"
#include "milnork/linalg.hpp"
#include "support.hpp"

using namespace milnork;
using namespace testing_support;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

// Univariate over F_p: brute-force trial division by every monic
// polynomial of degree 1..deg/2.
bool brute_irreducible(const Poly& f, std::uint32_t p) {
  const RingPtr& r = f.ring();
  int d = f.degree_in(0);
  for (int k = 1; 2 * k <= d; ++k) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(k), 0);
    for (;;) {
      std::vector<Term> ts{{{k}, 1}};
      for (int i = 0; i < k; ++i)
        if (c[static_cast<std::size_t>(i)]) ts.push_back({{i}, Scalar(c[static_cast<std::size_t>(i)])});
      if (f.divide_exact(Poly::from_terms(r, ts))) return false;
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == p) c[i++] = 0;
      if (i == c.size()) break;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("prime power field axioms by exhaustion") {
  for (std::uint32_t q : {4u, 8u, 9u, 25u}) {
    BaseField F = BaseField::finite(q);
    auto els = F.units();
    CHECK(els.size() == q - 1);
    els.push_back(F.zero());
    for (const auto& a : els) {
      if (a != 0) CHECK(F.mul(a, F.inv(a)) == F.one());
      CHECK(F.add(a, F.neg(a)) == F.zero());
      for (const auto& b : els) {
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (const auto& c : {els[0], els[els.size() / 2]})
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
    // Frobenius is additive.
    std::uint32_t p = F.characteristic();
    for (const auto& a : els)
      for (const auto& b : els) CHECK(F.pow(F.add(a, b), p) == F.add(F.pow(a, p), F.pow(b, p)));
  }
}

TEST_CASE("polynomial arithmetic agrees with evaluation") {
  std::mt19937 rng(11);
  for (const char* spec : {"Q(x,y,z)", "F5(x,y,z)", "F9(x,y,z)"}) {
    RingPtr r = parse_field(spec);
    for (int it = 0; it < 40; ++it) {
      Poly a = random_poly(rng, r, 4), b = random_poly(rng, r, 4);
      std::vector<Scalar> pt{r->field.from_int(static_cast<long long>(rng() % 7)), r->field.from_int(2),
                             r->field.from_int(static_cast<long long>(rng() % 5) - 2)};
      const BaseField& F = r->field;
      CHECK((a * b).evaluate(pt) == F.mul(a.evaluate(pt), b.evaluate(pt)));
      CHECK((a + b).evaluate(pt) == F.add(a.evaluate(pt), b.evaluate(pt)));
      CHECK((a - b).evaluate(pt) == F.sub(a.evaluate(pt), b.evaluate(pt)));
      if (!b.is_zero()) {
        auto q = (a * b).divide_exact(b);
        REQUIRE(q);
        CHECK(*q == a);
      }
    }
  }
}

TEST_CASE("factorization reconstructs and yields irreducibles") {
  std::mt19937 rng(5);
  SUBCASE("univariate over F3 against trial division") {
    RingPtr r = parse_field("F3(t)");
    for (int it = 0; it < 60; ++it) {
      Poly f = random_upoly(rng, r, 6) * random_upoly(rng, r, 3);
      if (f.is_zero()) continue;
      Factorization fz = factor(f);
      CHECK(fz.expand(r) == f);
      for (const auto& [g, m] : fz.factors) {
        CHECK(m >= 1);
        CHECK(brute_irreducible(g, 3));
      }
      CHECK(is_irreducible(f) == (brute_irreducible(f, 3) && f.degree_in(0) >= 1));
    }
  }
  SUBCASE("bivariate products over Q, F5 and F4") {
    for (const char* spec : {"Q(x,y)", "F5(x,y)", "F4(x,y)"}) {
      RingPtr r = parse_field(spec);
      for (int it = 0; it < 25; ++it) {
        Poly a = random_poly(rng, r, 3), b = random_poly(rng, r, 3);
        Poly f = a * b;
        if (f.is_zero()) continue;
        Factorization fz = factor(f);
        CHECK(fz.expand(r) == f);
        // Each factor of the pieces divides some factor list entry.
        std::size_t with_mult = 0;
        for (const auto& [g, m] : fz.factors) with_mult += static_cast<std::size_t>(m);
        std::size_t lower = (a.is_constant() ? 0 : 1) + (b.is_constant() ? 0 : 1);
        CHECK(with_mult >= lower);
      }
    }
  }
  SUBCASE("known cases") {
    RingPtr q = parse_field("Q(x,y)");
    CHECK(factor(P("x^2 - y^2", q)).factors.size() == 2);
    CHECK(is_irreducible(P("x^2 + y^2", q)));
    RingPtr f5 = parse_field("F5(x)");
    CHECK(factor(P("x^2 + 1", f5)).factors.size() == 2);  // -1 is a square mod 5
    RingPtr f3 = parse_field("F3(x)");
    CHECK(is_irreducible(P("x^2 + 1", f3)));
  }
}

TEST_CASE("rational functions: normal form and evaluation homomorphism") {
  std::mt19937 rng(7);
  for (const char* spec : {"Q(x,y)", "F5(x,y)"}) {
    RingPtr r = parse_field(spec);
    const BaseField& F = r->field;
    for (int it = 0; it < 40; ++it) {
      RatFunc f = random_ratfunc(rng, r, 3), g = random_ratfunc(rng, r, 3);
      std::vector<Scalar> pt{F.from_int(static_cast<long long>(rng() % 5) + 1), F.from_int(3)};
      try {
        Scalar fv = f.specialize(pt), gv = g.specialize(pt);
        CHECK((f * g).specialize(pt) == F.mul(fv, gv));
        if (gv != 0) CHECK((f / g).specialize(pt) == F.div(fv, gv));
        if (!(f == g)) CHECK((f - g).specialize(pt) == F.sub(fv, gv));
      } catch (const Error& e) {
        CHECK((e.kind() == ErrorKind::PoleAtPoint || e.kind() == ErrorKind::ZeroAtPoint));
      }
      CHECK(f * f.inverse() == RatFunc::constant(r, 1));
      CHECK(f.pow(3) == f * f * f);
      // Text round trip is the identity on normal forms.
      CHECK(parse_expr(f.to_string(), r) == f);
    }
  }
  RingPtr r = parse_field("Q(t)");
  CHECK(kind_of([&] { (void)(E("t", r) - E("t", r)); }) == ErrorKind::ZeroElement);
  CHECK(kind_of([&] { (void)E("1", r).one_minus(); }) == ErrorKind::ZeroElement);
  CHECK(kind_of([&] { (void)E("1/t", r).specialize({0}); }) == ErrorKind::PoleAtPoint);
  CHECK(E("(t^2-1)/(t-1)", r) == E("t+1", r));
}

TEST_CASE("exact linear algebra against cofactor and substitution oracles") {
  std::mt19937 rng(3);
  auto cofactor = [](auto&& self, const linalg::QMatrix& m) -> mpq_class {
    if (m.size() == 1) return m[0][0];
    mpq_class s = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      linalg::QMatrix minor;
      for (std::size_t i = 1; i < m.size(); ++i) {
        linalg::QVector row;
        for (std::size_t k = 0; k < m.size(); ++k)
          if (k != j) row.push_back(m[i][k]);
        minor.push_back(row);
      }
      s += (j % 2 ? -1 : 1) * m[0][j] * self(self, minor);
    }
    return s;
  };
  for (int it = 0; it < 50; ++it) {
    std::size_t n = 1 + rng() % 4, c = 1 + rng() % 5;
    linalg::QMatrix m(n, linalg::QVector(c));
    for (auto& row : m)
      for (auto& x : row) {
        x = mpq_class(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
        x.canonicalize();
      }
    auto ker = linalg::kernel(m, c);
    CHECK(ker.size() + linalg::rank(m, c) == c);
    for (const auto& k : ker)
      for (const auto& row : m) {
        mpq_class s = 0;
        for (std::size_t j = 0; j < c; ++j) s += row[j] * k[j];
        CHECK(s == 0);
      }
    if (n == c) CHECK(linalg::determinant(m) == cofactor(cofactor, m));
  }
  linalg::ZMatrix basis{{2, 0}, {1, 3}};
  auto h = linalg::hnf(basis, 2);
  CHECK(linalg::in_lattice(h, {3, 3}));
  CHECK(linalg::in_lattice(h, {0, 6}));
  CHECK_FALSE(linalg::in_lattice(h, {1, 0}));
}

TEST_CASE("parsing fields and expressions") {
  CHECK(parse_field("F3(t)")->field.name() == "F3");
  CHECK(parse_field("Q(x,y)")->vars == std::vector<std::string>{"x", "y"});
  CHECK(parse_field("F4(a)")->field.order() == 4);
  CHECK(kind_of([] { parse_field("F6(t)"); }) != ErrorKind::ZeroElement);
  RingPtr r = parse_field("Q(x,y)");
  CHECK(E("x*y", r).to_string() == "x*y");
  CHECK(E("(x+y)^2 - 2*x*y", r) == E("x^2 + y^2", r));
  CHECK(E("3/6", r) == E("1/2", r));
  CHECK(kind_of([&] { E("x +", r); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([&] { E("z", r); }) == ErrorKind::UnknownVariable);
  CHECK(split_top_level("a, (b, c), d", ',').size() == 3);
}

TEST_CASE("elimination recovers implicit equations") {
  RingPtr r = parse_field("Q(t,x,y)");
  auto rel = eliminate({P("x - t^2", r), P("y - t^3", r)}, {0});
  REQUIRE(rel.size() == 1);
  for (long s = -3; s <= 3; ++s) CHECK(rel[0].evaluate({0, s * s, s * s * s}) == 0);
  CHECK(rel[0].degree_in(0) == 0);
  RingPtr f = parse_field("F5(t,x)");
  Poly res = resultant(P("t^2 - x", f), P("t - 2", f), 0);
  CHECK(res.evaluate({0, 4}) == 0);
}
