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

#include "milnork/errors.hpp"
#include "milnork/valuation.hpp"
#include "support.hpp"

using namespace milnork;
using namespace testing_support;

namespace {

// Multiplicity of pi in p by repeated exact division.
int multiplicity(Poly p, const Poly& pi) {
  int k = 0;
  while (auto q = p.divide_exact(pi)) {
    p = *q;
    ++k;
  }
  return k;
}

int pi_order(const RatFunc& f, const Poly& pi) { return multiplicity(f.numerator(), pi) - multiplicity(f.denominator(), pi); }

long p_content(const Poly& p, long prime) {
  long best = 1L << 30;
  for (const auto& t : p.terms()) {
    mpz_class n = t.coef.get_num(), d = t.coef.get_den();
    long k = 0;
    while (n % prime == 0) n /= prime, ++k;
    while (d % prime == 0) d /= prime, --k;
    best = std::min(best, k);
  }
  return best;
}

long weight_min(const Poly& p, const std::vector<long>& w) {
  long best = 1L << 30;
  for (const auto& t : p.terms()) {
    long s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * t.exps[i];
    best = std::min(best, s);
  }
  return best;
}

}  // namespace

TEST_CASE("rank-one valuations match independent order computations") {
  std::mt19937 rng(21);
  RingPtr r = parse_field("F5(x,y)");
  Valuation vx = Valuation::pi_adic(P("x", r)), vq = Valuation::pi_adic(P("x^2 + y + 1", r));
  Valuation deg = Valuation::degree_place(r), mono = Valuation::monomial(r, {{1, -1}});
  for (int it = 0; it < 80; ++it) {
    RatFunc f = random_ratfunc(rng, r, 3) * E("x", r).pow(static_cast<long>(rng() % 3)) *
                E("x^2+y+1", r).pow(static_cast<long>(rng() % 3) - 1);
    CHECK(vx.value(f) == ValueVec{pi_order(f, P("x", r))});
    CHECK(vq.value(f) == ValueVec{pi_order(f, P("x^2 + y + 1", r))});
    CHECK(deg.value(f) == ValueVec{f.denominator().total_degree() - f.numerator().total_degree()});
    CHECK(mono.value(f) == ValueVec{weight_min(f.numerator(), {1, -1}) - weight_min(f.denominator(), {1, -1})});
    RatFunc g = random_ratfunc(rng, r, 2);
    for (const Valuation* v : {&vx, &vq, &deg, &mono}) {
      CHECK(v->value(f * g)[0] == v->value(f)[0] + v->value(g)[0]);
      if (!(f == -g)) CHECK(v->value(f + g)[0] >= std::min(v->value(f)[0], v->value(g)[0]));
    }
  }
}

TEST_CASE("p-adic Gauss valuation over Q") {
  std::mt19937 rng(4);
  RingPtr r = parse_field("Q(t)");
  Valuation v3 = Valuation::rational_prime(r, 3);
  for (int it = 0; it < 60; ++it) {
    RatFunc f = random_ratfunc(rng, r, 3) * RatFunc::constant(r, mpq_class(9 * (1 + static_cast<long>(rng() % 4)), 2));
    CHECK(v3.value(f) == ValueVec{p_content(f.numerator(), 3) - p_content(f.denominator(), 3)});
  }
  CHECK(v3.value(E("6*t + 3", r)) == ValueVec{1});
  CHECK(v3.residue(E("t + 4", r)).to_string() == "t + 1");
}

TEST_CASE("composite valuations are lexicographic and coarsen correctly") {
  std::mt19937 rng(8);
  RingPtr r = parse_field("F5(x,y)");
  Valuation w = Valuation::composite(r, {E("x", r), E("y", r)});
  CHECK(w.rank() == 2);
  CHECK(w.descriptor() == "comp:[x, y]");
  for (int it = 0; it < 60; ++it) {
    RatFunc f = random_ratfunc(rng, r, 3) * E("x", r).pow(static_cast<long>(rng() % 3) - 1) *
                E("y", r).pow(static_cast<long>(rng() % 3));
    int a = pi_order(f, P("x", r));
    // Remove x^a, set x = 0, read the y-order.
    RatFunc u = f / E("x", r).pow(a);
    RingPtr ry = parse_field("F5(y)");
    Poly n = u.numerator().substitute(0, Poly(r)), d = u.denominator().substitute(0, Poly(r));
    int b = multiplicity(n, P("y", r)) - multiplicity(d, P("y", r));
    CHECK(w.value(f) == ValueVec{a, b});
  }
  Valuation c = w.coarsen(1);
  CHECK(c.descriptor() == "pi:x");
  CHECK(c.is_coarsening_of(w));
  CHECK_FALSE(w.is_coarsening_of(c));
  CHECK(Valuation::trivial(r).is_coarsening_of(w));
  CHECK(w.residue_trdeg() == 0);
  CHECK(c.residue_trdeg() == 1);
  CHECK(lex_compare({0, 5}, {1, -9}) < 0);
}

TEST_CASE("residue maps") {
  RingPtr r = parse_field("F5(t,u)");
  Valuation vt = Valuation::pi_adic(P("t", r));
  CHECK(vt.residue(E("(t+2)/(t-1)", r)) == vt.residue(E("-2", r)));
  CHECK(vt.residue(E("u + t", r)).to_string() == "u");
  Valuation vu = Valuation::pi_adic(P("u - t^2", r));
  CHECK(vu.residue(E("u", r)) == vu.residue(E("t^2", r)));
  RingPtr q = parse_field("Q(t)");
  Valuation fin = Valuation::pi_adic(P("t^2 + 1", q));
  Residue i = fin.residue(E("t", q));
  CHECK(i.kind == Residue::Kind::Extension);
  CHECK(fin.residue(E("t^2", q)) == fin.residue(E("-1", q)));
  try {
    (void)vt.residue(E("t", r));
    FAIL("expected NotAUnit");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAUnit);
  }
}

TEST_CASE("unimodular completion") {
  for (std::vector<long> u : {std::vector<long>{1, -1}, {2, 3}, {3, 5, 7}}) {
    auto V = unimodular_completion(u);
    REQUIRE(V.size() == u.size());
    // u * W = e_1.
    for (std::size_t j = 0; j < u.size(); ++j) {
      long s = 0;
      for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * V[i][j];
      CHECK(s == (j == 0 ? 1 : 0));
    }
    linalg::QMatrix m;
    for (const auto& row : V) {
      linalg::QVector qr;
      for (long x : row) qr.push_back(x);
      m.push_back(qr);
    }
    auto d = linalg::determinant(m);
    CHECK((d == 1 || d == -1));
  }
}
