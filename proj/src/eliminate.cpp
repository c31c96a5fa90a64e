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

#include "milnork/eliminate.hpp"

#include <algorithm>
#include <optional>
#include <random>

#include "milnork/errors.hpp"

namespace milnork {

Poly resultant(const Poly& a, const Poly& b, std::size_t var) {
  const RingPtr& ring = a.ring();
  int m = a.degree_in(var), n = b.degree_in(var);
  if (a.is_zero() || b.is_zero()) return Poly(ring);
  if (m == 0) return a.pow(static_cast<unsigned>(n));
  if (n == 0) return b.pow(static_cast<unsigned>(m));
  auto ca = a.coefficients_in(var), cb = b.coefficients_in(var);
  std::size_t N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Poly>> s(N, std::vector<Poly>(N, Poly(ring)));
  // Rows: n shifts of a, then m shifts of b; highest coefficient first.
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= m; ++k) s[i][i + k] = ca[m - k];
  for (int i = 0; i < m; ++i)
    for (int k = 0; k <= n; ++k) s[n + i][i + k] = cb[n - k];
  Poly prev = Poly::constant(ring, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < N; ++k) {
    if (s[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < N && s[p][k].is_zero()) ++p;
      if (p == N) return Poly(ring);
      std::swap(s[p], s[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < N; ++i) {
      for (std::size_t j = k + 1; j < N; ++j) {
        Poly t = s[i][j] * s[k][k] - s[i][k] * s[k][j];
        auto q = t.divide_exact(prev);
        if (!q) fail(ErrorKind::InvalidArgument, "inexact Bareiss step");
        s[i][j] = std::move(*q);
      }
      s[i][k] = Poly(ring);
    }
    prev = s[k][k];
  }
  Poly det = s[N - 1][N - 1];
  return negate ? -det : det;
}

bool relation_order_first(const Monomial& a, const Monomial& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Poly relation_monic(const Poly& p) {
  if (p.is_zero()) return p;
  const Term* lead = &p.terms().front();
  for (const auto& t : p.terms())
    if (relation_order_first(t.exps, lead->exps)) lead = &t;
  return p.scaled(p.field().inv(lead->coef));
}

std::string relation_to_string(const Poly& p) { return p.to_string(relation_order_first); }

namespace {

struct GraphMap {
  // For each kept variable w: w = -c0 / c1.
  std::vector<std::size_t> vars;
  std::vector<Poly> c0, c1;

  bool vanishes(const Poly& h, std::mt19937_64& rng) const;
};

std::optional<GraphMap> detect_graph(const std::vector<Poly>& rels, const std::vector<bool>& kept) {
  GraphMap g;
  for (std::size_t w = 0; w < kept.size(); ++w) {
    if (!kept[w]) continue;
    bool found = false;
    for (const auto& r : rels) {
      if (r.degree_in(w) != 1) continue;
      auto cs = r.coefficients_in(w);
      bool clean = true;
      for (const auto& c : cs) {
        auto sup = c.support();
        for (std::size_t u = 0; u < kept.size(); ++u)
          if (kept[u] && sup[u]) clean = false;
      }
      if (!clean) continue;
      g.vars.push_back(w);
      g.c0.push_back(cs[0]);
      g.c1.push_back(cs[1]);
      found = true;
      break;
    }
    if (!found) return std::nullopt;
  }
  return g;
}

Scalar random_scalar(const BaseField& F, std::mt19937_64& rng) {
  if (F.is_finite()) return F.from_code(static_cast<FqArith::Elem>(rng() % F.order()));
  return Scalar(static_cast<long>(rng() % 2001) - 1000);
}

bool GraphMap::vanishes(const Poly& h, std::mt19937_64& rng) const {
  const BaseField& F = h.field();
  std::size_t n = h.ring()->nvars();
  // Cheap refutation by sampling.
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<Scalar> pt(n);
    for (auto& x : pt) x = random_scalar(F, rng);
    bool ok = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      Scalar d = c1[i].evaluate(pt);
      if (F.is_zero(d)) { ok = false; break; }
      pt[vars[i]] = F.neg(F.div(c0[i].evaluate(pt), d));
    }
    if (ok && !F.is_zero(h.evaluate(pt))) return false;
  }
  // Exact back-substitution, clearing the denominators c1.
  Poly acc = h;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto cs = acc.coefficients_in(vars[i]);
    if (cs.size() <= 1) continue;
    std::size_t d = cs.size() - 1;
    Poly sum(acc.ring());
    Poly neg0 = -c0[i];
    for (std::size_t k = 0; k <= d; ++k)
      sum += cs[k] * neg0.pow(static_cast<unsigned>(k)) * c1[i].pow(static_cast<unsigned>(d - k));
    acc = sum;
  }
  return acc.is_zero();
}

}  // namespace

std::vector<Poly> eliminate(const std::vector<Poly>& relations, const std::vector<std::size_t>& vars,
                            const EliminationOptions& opts) {
  if (relations.empty()) return {};
  const RingPtr& ring = relations.front().ring();
  std::vector<bool> kept(ring->nvars(), false);
  for (const auto& r : relations) {
    auto s = r.support();
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i]) kept[i] = true;
  }
  for (auto v : vars) kept[v] = false;
  auto graph = detect_graph(relations, kept);
  std::mt19937_64 rng(0x656c696dULL);

  auto clean = [&](const Poly& r) -> Poly {
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (r.degree_in(i) > opts.max_var_degree)
        fail(ErrorKind::DegreeCapExceeded, "intermediate resultant exceeds degree cap");
    Factorization fz;
    try {
      fz = factor(r, opts.factor_caps);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::UnsupportedShape && e.kind() != ErrorKind::DegreeCapExceeded &&
          e.kind() != ErrorKind::BudgetExceeded)
        throw;
      return r;
    }
    Poly acc = Poly::constant(ring, 1), all = Poly::constant(ring, 1);
    bool any = false;
    for (const auto& [f, m] : fz.factors) {
      all = all * f;
      if (!graph || graph->vanishes(f, rng)) {
        acc = acc * f;
        any = true;
      }
    }
    return any ? acc : all;
  };

  std::vector<Poly> rels = relations;
  for (auto var : vars) {
    std::vector<Poly> with, without;
    for (auto& r : rels) (r.degree_in(var) > 0 ? with : without).push_back(r);
    if (with.size() <= 1) {
      rels = std::move(without);
      continue;
    }
    std::size_t piv = 0;
    for (std::size_t i = 1; i < with.size(); ++i)
      if (with[i].degree_in(var) < with[piv].degree_in(var)) piv = i;
    for (std::size_t i = 0; i < with.size(); ++i) {
      if (i == piv) continue;
      Poly res = resultant(with[piv], with[i], var);
      if (res.is_zero()) continue;
      Poly c = clean(res);
      if (!c.is_constant()) without.push_back(c);
    }
    rels = std::move(without);
  }
  std::vector<Poly> out;
  for (auto& r : rels) {
    if (r.is_constant()) continue;
    Poly m = relation_monic(r);
    if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
  }
  return out;
}

}  // namespace milnork
