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

#include "milnork/upoly.hpp"

#include <algorithm>
#include <numeric>

#include "milnork/errors.hpp"

namespace milnork::upoly {

std::vector<std::pair<std::vector<std::uint32_t>, int>> factor_fq(
    const FqArith& fq, const std::vector<std::uint32_t>& f) {
  SmallFqOps ops{&fq};
  Vec<SmallFqOps> g = f;
  trim(ops, g);
  if (g.empty()) fail(ErrorKind::ZeroElement, "factor of zero polynomial");
  return factor(ops, g);
}

namespace {

using QVec = std::vector<mpq_class>;
using ZVec = std::vector<mpz_class>;

void trim_q(QVec& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

std::pair<QVec, QVec> divrem_q(QVec a, const QVec& b) {
  trim_q(a);
  if (a.size() < b.size()) return {{}, a};
  QVec q(a.size() - b.size() + 1);
  for (std::size_t i = a.size(); i-- > b.size() - 1;) {
    mpq_class c = a[i] / b.back();
    q[i - b.size() + 1] = c;
    if (sgn(c) != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  trim_q(a);
  trim_q(q);
  return {q, a};
}

QVec monic_q(QVec a) {
  mpq_class lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

QVec gcd_q(QVec a, QVec b) {
  trim_q(a);
  trim_q(b);
  while (!b.empty()) {
    auto r = divrem_q(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.empty() ? a : monic_q(a);
}

QVec derivative_q(const QVec& a) {
  QVec r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim_q(r);
  return r;
}

// Primitive integer polynomial with positive leading coefficient.
ZVec primitive_part(const QVec& a) {
  mpz_class l = 1;
  for (auto& c : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZVec z(a.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpq_class t = a[i] * l;
    z[i] = t.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  for (auto& c : z) c /= g;
  if (z.back() < 0)
    for (auto& c : z) c = -c;
  return z;
}

QVec to_q(const ZVec& z) { return QVec(z.begin(), z.end()); }

// Polynomials over Z/m with coefficients kept in [0, m).
ZVec zmod(ZVec a, const mpz_class& m) {
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZVec zmul(const ZVec& a, const ZVec& b, const mpz_class& m) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return zmod(std::move(r), m);
}

ZVec zadd(const ZVec& a, const ZVec& b, const mpz_class& m) {
  ZVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return zmod(std::move(r), m);
}

ZVec zscale(ZVec a, const mpz_class& c, const mpz_class& m) {
  for (auto& x : a) x *= c;
  return zmod(std::move(a), m);
}

// Division by a monic divisor over Z/m.
std::pair<ZVec, ZVec> zdivrem(ZVec a, const ZVec& b, const mpz_class& m) {
  a = zmod(std::move(a), m);
  if (a.size() < b.size()) return {{}, a};
  ZVec q(a.size() - b.size() + 1, 0);
  for (std::size_t i = a.size(); i-- > b.size() - 1;) {
    mpz_class c = a[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    q[i - b.size() + 1] = c;
    if (c != 0)
      for (std::size_t j = 0; j < b.size(); ++j) a[i - b.size() + 1 + j] -= c * b[j];
  }
  a.resize(b.size() - 1);
  return {zmod(std::move(q), m), zmod(std::move(a), m)};
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// s, t with s*a + t*b = 1 mod p for coprime a, b.
std::pair<ZVec, ZVec> zxgcd(const ZVec& a, const ZVec& b, const mpz_class& p) {
  ZVec r0 = zmod(a, p), r1 = zmod(b, p);
  ZVec s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    mpz_class li = inv_mod(r1.back(), p);
    ZVec mon = zscale(r1, li, p);
    auto [q, r] = zdivrem(r0, mon, p);
    q = zscale(q, li, p);
    ZVec s2 = zadd(s0, zscale(zmul(q, s1, p), -1, p), p);
    ZVec t2 = zadd(t0, zscale(zmul(q, t1, p), -1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  mpz_class li = inv_mod(r0.back(), p);
  return {zscale(s0, li, p), zscale(t0, li, p)};
}

// Lift T = g*h mod p (g monic) to T = g*h mod p^k.
void hensel_lift(const ZVec& T, ZVec& g, ZVec& h, const mpz_class& p, int k) {
  auto [s, t] = zxgcd(g, h, p);
  mpz_class m = p;
  for (int step = 1; step < k; ++step) {
    mpz_class mp = m * p;
    ZVec diff = zadd(zmod(T, mp), zscale(zmul(g, h, mp), -1, mp), mp);
    for (auto& c : diff) c /= m;
    ZVec e = zmod(diff, p);
    auto [q, r] = zdivrem(zmul(t, e, p), g, p);
    ZVec dh = zadd(zmul(s, e, p), zmul(q, h, p), p);
    g = zadd(g, zscale(r, m, mp), mp);
    h = zadd(h, zscale(dh, m, mp), mp);
    m = mp;
  }
}

// Factor a square-free primitive integer polynomial of degree >= 2 into
// irreducibles over Z: modular factorization at a small prime, Hensel
// lifting past the coefficient bound, then subset recombination.
std::vector<ZVec> factor_squarefree_z(ZVec g) {
  std::size_t n = g.size() - 1;
  mpz_class norm2 = 0;
  for (auto& c : g) norm2 += c * c;
  mpz_class norm = sqrt(norm2) + 1;
  mpz_class bound = (mpz_class(1) << n) * norm * abs(g.back());

  // Pick the prime with fewest modular factors among a handful.
  mpz_class p = 2, best_p = 0;
  std::vector<ZVec> best;
  int tried = 0;
  while (tried < 5) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (p > 60000) break;
    if (g.back() % p == 0) continue;
    FqArith fp(static_cast<std::uint32_t>(p.get_ui()), 1);
    SmallFqOps ops{&fp};
    Vec<SmallFqOps> gm(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), g[i].get_mpz_t(), p.get_mpz_t());
      gm[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    trim(ops, gm);
    if (gcd(ops, gm, derivative(ops, gm)).size() != 1) continue;
    ++tried;
    auto fs = factor(ops, gm);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best.clear();
      for (auto& [piece, mult] : fs) best.emplace_back(piece.begin(), piece.end());
    }
    if (best.size() == 1) break;
  }
  if (best_p == 0) fail(ErrorKind::BudgetExceeded, "no suitable prime for factorization");
  if (best.size() == 1) return {g};
  p = best_p;

  int k = 1;
  mpz_class M = p;
  while (M <= 2 * bound) {
    M *= p;
    ++k;
  }
  std::vector<ZVec> pieces;
  ZVec target = zmod(g, M);
  for (std::size_t i = 0; i + 1 < best.size(); ++i) {
    ZVec u = best[i];
    ZVec rest{zmod(ZVec{g.back()}, p)};
    for (std::size_t j = i + 1; j < best.size(); ++j) rest = zmul(rest, best[j], p);
    hensel_lift(target, u, rest, p, k);
    pieces.push_back(u);
    target = rest;
  }
  pieces.push_back(zscale(target, inv_mod(g.back(), M), M));

  std::vector<ZVec> found;
  mpz_class half = M / 2;
  auto symmetric = [&](const ZVec& v) {
    ZVec z(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) z[i] = v[i] > half ? mpz_class(v[i] - M) : v[i];
    return z;
  };

  std::size_t s = 1;
  while (2 * s <= pieces.size()) {
    bool progress = false;
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
      ZVec prod{zmod(ZVec{g.back()}, M)};
      for (auto i : idx) prod = zmul(prod, pieces[i], M);
      ZVec cand = symmetric(prod);
      auto prim = primitive_part(to_q(cand));
      auto [quo, r] = divrem_q(to_q(g), to_q(prim));
      if (r.empty()) {
        found.push_back(prim);
        g = primitive_part(quo);
        for (std::size_t j = s; j-- > 0;) pieces.erase(pieces.begin() + idx[j]);
        progress = true;
        break;
      }
      std::size_t j = s;
      while (j > 0 && idx[j - 1] == pieces.size() - s + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t l = j; l < s; ++l) idx[l] = idx[l - 1] + 1;
    }
    if (!progress) ++s;
  }
  if (g.size() > 1) found.push_back(g);
  return found;
}

}  // namespace

std::pair<mpq_class, std::vector<std::pair<std::vector<mpq_class>, int>>> factor_rational(
    const std::vector<mpq_class>& f, int degree_cap) {
  QVec a = f;
  trim_q(a);
  if (a.empty()) fail(ErrorKind::ZeroElement, "factor of zero polynomial");
  if (static_cast<int>(a.size()) - 1 > degree_cap)
    fail(ErrorKind::DegreeCapExceeded, "univariate degree over Q exceeds cap");
  mpq_class lc = a.back();
  std::vector<std::pair<QVec, int>> out;
  if (a.size() == 1) return {lc, out};
  a = monic_q(a);

  // Yun's square-free decomposition.
  QVec c = gcd_q(a, derivative_q(a));
  QVec w = divrem_q(a, c).first;
  int i = 1;
  std::vector<std::pair<QVec, int>> parts;
  while (w.size() > 1) {
    QVec y = gcd_q(w, c);
    QVec z = divrem_q(w, y).first;
    if (z.size() > 1) parts.emplace_back(monic_q(z), i);
    ++i;
    w = y;
    c = divrem_q(c, y).first;
  }
  for (auto& [part, mult] : parts) {
    if (part.size() == 2) {
      out.emplace_back(part, mult);
      continue;
    }
    for (auto& z : factor_squarefree_z(primitive_part(part))) out.emplace_back(monic_q(to_q(z)), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    for (std::size_t k = 0; k < x.first.size(); ++k)
      if (x.first[k] != y.first[k]) return x.first[k] < y.first[k];
    return x.second < y.second;
  });
  return {lc, out};
}

}  // namespace milnork::upoly
