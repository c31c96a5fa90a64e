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

#include "milnork/factor.hpp"

#include <algorithm>
#include <functional>

#include "milnork/errors.hpp"
#include "milnork/upoly.hpp"

namespace milnork {

Poly Factorization::expand(const RingPtr& ring) const {
  Poly acc = Poly::constant(ring, unit);
  for (const auto& [p, m] : factors) acc = acc * p.pow(static_cast<unsigned>(m));
  return acc;
}

namespace {

using UVec = std::vector<Scalar>;

UVec umul(const BaseField& F, const UVec& a, const UVec& b) {
  UVec r(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return r;
}

struct Piece {
  UVec poly;
  int mult;
  int deg;
};

// Kronecker map x_{u_j} -> t^{w_j} on the used variables.
struct Kronecker {
  std::vector<std::size_t> used;
  std::vector<long> weight, radix;

  UVec image(const Poly& f) const {
    long top = 0;
    for (const auto& t : f.terms()) top = std::max(top, exponent(t.exps));
    UVec v(top + 1, Scalar(0));
    for (const auto& t : f.terms()) v[exponent(t.exps)] = t.coef;
    return v;
  }
  long exponent(const Monomial& m) const {
    long e = 0;
    for (std::size_t j = 0; j < used.size(); ++j) e += weight[j] * m[used[j]];
    return e;
  }
  Poly preimage(const RingPtr& ring, const UVec& v) const {
    std::vector<Term> ts;
    for (std::size_t e = 0; e < v.size(); ++e) {
      if (sgn(v[e]) == 0) continue;
      Monomial m(ring->nvars(), 0);
      long r = static_cast<long>(e);
      for (std::size_t j = 0; j < used.size(); ++j) m[used[j]] = static_cast<int>((r / weight[j]) % radix[j]);
      ts.push_back({std::move(m), v[e]});
    }
    return Poly::from_terms(ring, std::move(ts));
  }
};

std::vector<Piece> univariate_pieces(const BaseField& F, const UVec& img, int cap) {
  std::vector<Piece> out;
  if (F.is_rational()) {
    auto [lc, fs] = upoly::factor_rational(img, cap);
    (void)lc;
    for (auto& [p, m] : fs) out.push_back({p, m, static_cast<int>(p.size()) - 1});
  } else {
    if (static_cast<int>(img.size()) - 1 > cap)
      fail(ErrorKind::DegreeCapExceeded, "factorization image degree exceeds cap");
    std::vector<std::uint32_t> codes(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) codes[i] = F.to_code(img[i]);
    for (auto& [p, m] : upoly::factor_fq(F.fq(), codes)) {
      UVec v(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) v[i] = F.from_code(p[i]);
      out.push_back({std::move(v), m, static_cast<int>(p.size()) - 1});
    }
  }
  return out;
}

// Factor a monic polynomial with no monomial content and at least one
// variable. Irreducible factors are found in order of increasing image
// degree, so the first dividing candidate is irreducible.
void factor_core(const Poly& f, const FactorCaps& caps, std::vector<std::pair<Poly, int>>& out) {
  const RingPtr& ring = f.ring();
  const BaseField& F = f.field();
  Kronecker K;
  auto sup = f.support();
  long w = 1;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    if (!sup[i]) continue;
    K.used.push_back(i);
    K.weight.push_back(w);
    K.radix.push_back(f.degree_in(i) + 1);
    w *= f.degree_in(i) + 1;
    if (w > (1L << 24)) fail(ErrorKind::DegreeCapExceeded, "factorization image degree exceeds cap");
  }
  bool univariate = K.used.size() == 1;
  if (!univariate && f.total_degree() > caps.multivariate_total_degree)
    fail(ErrorKind::UnsupportedShape, "multivariate factorization beyond total degree cap");
  int cap = F.is_rational() ? (univariate ? caps.rational_univariate_degree : caps.image_degree_rational)
                            : caps.image_degree_finite;
  UVec img = K.image(f);
  if (static_cast<int>(img.size()) - 1 > cap)
    fail(ErrorKind::DegreeCapExceeded, "factorization image degree exceeds cap");
  std::vector<Piece> pieces = univariate_pieces(F, img, cap);
  if (univariate) {
    for (auto& pc : pieces) out.emplace_back(K.preimage(ring, pc.poly).monic(), pc.mult);
    return;
  }

  Poly rem = f;
  long attempts = 0;
  int total = static_cast<int>(img.size()) - 1;
  int d = 1;
  std::vector<int> counts(pieces.size(), 0);
  while (!rem.is_constant()) {
    bool found = false;
    for (; d <= total / 2 && !found; ++d) {
      // Enumerate count vectors of exact image degree d.
      std::fill(counts.begin(), counts.end(), 0);
      std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int left) -> bool {
        if (left == 0) {
          if (++attempts > caps.max_attempts)
            fail(ErrorKind::BudgetExceeded, "factor recombination budget exhausted");
          UVec prod{Scalar(1)};
          for (std::size_t k = 0; k < pieces.size(); ++k)
            for (int c = 0; c < counts[k]; ++c) prod = umul(F, prod, pieces[k].poly);
          Poly g = K.preimage(ring, prod).monic();
          if (g.is_constant()) return false;
          auto q = rem.divide_exact(g);
          if (!q) return false;
          int m = 0;
          while (q) {
            rem = *q;
            ++m;
            q = rem.divide_exact(g);
          }
          for (std::size_t k = 0; k < pieces.size(); ++k) pieces[k].mult -= m * counts[k];
          out.emplace_back(std::move(g), m);
          return true;
        }
        if (i == pieces.size()) return false;
        for (int c = std::min(pieces[i].mult, left / std::max(pieces[i].deg, 1)); c >= 0; --c) {
          if (c * pieces[i].deg > left) continue;
          counts[i] = c;
          if (rec(i + 1, left - c * pieces[i].deg)) return true;
        }
        counts[i] = 0;
        return false;
      };
      found = rec(0, d);
      if (found) break;
    }
    if (!found) {
      if (!rem.is_constant()) out.emplace_back(rem.monic(), 1);
      break;
    }
    total = 0;
    for (const auto& pc : pieces) total += pc.mult * pc.deg;
  }
}

}  // namespace

Factorization factor(const Poly& f, const FactorCaps& caps) {
  if (f.is_zero()) fail(ErrorKind::ZeroElement, "cannot factor zero");
  Factorization out;
  const RingPtr& ring = f.ring();
  out.unit = f.leading_coef();
  Poly g = f.monic();
  if (g.is_constant()) return out;
  // Monomial content.
  Monomial low(ring->nvars(), 0);
  for (std::size_t i = 0; i < ring->nvars(); ++i) low[i] = g.low_degree_in(i);
  if (std::any_of(low.begin(), low.end(), [](int e) { return e > 0; })) {
    std::vector<Term> ts = g.terms();
    for (auto& t : ts)
      for (std::size_t i = 0; i < low.size(); ++i) t.exps[i] -= low[i];
    g = Poly::from_terms(ring, std::move(ts));
    for (std::size_t i = 0; i < low.size(); ++i)
      if (low[i] > 0) out.factors.emplace_back(Poly::variable(ring, i), low[i]);
  }
  if (!g.is_constant()) factor_core(g, caps, out.factors);
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

bool is_irreducible(const Poly& f, const FactorCaps& caps) {
  if (f.is_constant()) return false;
  auto fz = factor(f, caps);
  return fz.factors.size() == 1 && fz.factors[0].second == 1;
}

}  // namespace milnork
