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

#ifndef MILNORK_UPOLY_HPP_
#define MILNORK_UPOLY_HPP_

// Dense univariate polynomials over a finite prime-power field, written
// once over an element-ops policy so the same distinct-degree and
// equal-degree splitting serves both small F_q (table arithmetic) and the
// large primes used to factor integer polynomials.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "milnork/field.hpp"

namespace milnork::upoly {

struct SmallFqOps {
  using Elem = std::uint32_t;
  const FqArith* f;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  Elem add(Elem a, Elem b) const { return f->add(a, b); }
  Elem sub(Elem a, Elem b) const { return f->sub(a, b); }
  Elem neg(Elem a) const { return f->neg(a); }
  Elem mul(Elem a, Elem b) const { return f->mul(a, b); }
  Elem inv(Elem a) const { return f->inv(a); }
  Elem from_int(long long v) const { return f->from_int(v); }
  mpz_class order() const { return f->q(); }
  std::uint32_t characteristic() const { return f->p(); }
  // p-th root of an element (Frobenius inverse).
  Elem pth_root(Elem a) const {
    Elem r = a;
    for (unsigned i = 1; i < f->e(); ++i) r = pow(r, f->p());
    return r;
  }
  Elem pow(Elem a, std::uint64_t k) const {
    Elem r = 1;
    while (k) {
      if (k & 1) r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  template <class Rng>
  Elem random(Rng& rng) const {
    return static_cast<Elem>(std::uniform_int_distribution<std::uint32_t>(0, f->q() - 1)(rng));
  }
};

struct BigPrimeOps {
  using Elem = mpz_class;
  mpz_class p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem red(Elem a) const {
    a %= p;
    if (a < 0) a += p;
    return a;
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a + b;
    if (r >= p) r -= p;
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a - b;
    if (r < 0) r += p;
    return r;
  }
  Elem neg(const Elem& a) const { return sgn(a) == 0 ? a : Elem(p - a); }
  Elem mul(const Elem& a, const Elem& b) const { return red(a * b); }
  Elem inv(const Elem& a) const {
    Elem r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    return r;
  }
  Elem from_int(long long v) const { return red(Elem(static_cast<long>(v))); }
  mpz_class order() const { return p; }
  unsigned long characteristic() const { return 0; }  // unused: p is large
  Elem pth_root(const Elem& a) const { return a; }
  template <class Rng>
  Elem random(Rng& rng) const {
    // Enough randomness for splitting; exactness does not depend on it.
    mpz_class r = 0;
    for (int i = 0; i < 4; ++i) r = (r << 64) + mpz_class(std::to_string(rng()));
    return red(r);
  }
};

template <class Ops>
using Vec = std::vector<typename Ops::Elem>;

template <class Ops>
void trim(const Ops& ops, Vec<Ops>& a) {
  while (!a.empty() && ops.is_zero(a.back())) a.pop_back();
}

template <class Ops>
int deg(const Vec<Ops>& a) {
  return static_cast<int>(a.size()) - 1;
}

template <class Ops>
Vec<Ops> add(const Ops& ops, const Vec<Ops>& a, const Vec<Ops>& b) {
  Vec<Ops> r(std::max(a.size(), b.size()), ops.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops.add(r[i], b[i]);
  trim(ops, r);
  return r;
}

template <class Ops>
Vec<Ops> sub(const Ops& ops, const Vec<Ops>& a, const Vec<Ops>& b) {
  Vec<Ops> r(std::max(a.size(), b.size()), ops.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = ops.sub(r[i], b[i]);
  trim(ops, r);
  return r;
}

template <class Ops>
Vec<Ops> mul(const Ops& ops, const Vec<Ops>& a, const Vec<Ops>& b) {
  if (a.empty() || b.empty()) return {};
  Vec<Ops> r(a.size() + b.size() - 1, ops.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (ops.is_zero(a[i])) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = ops.add(r[i + j], ops.mul(a[i], b[j]));
  }
  trim(ops, r);
  return r;
}

template <class Ops>
Vec<Ops> scale(const Ops& ops, const Vec<Ops>& a, const typename Ops::Elem& c) {
  Vec<Ops> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = ops.mul(a[i], c);
  trim(ops, r);
  return r;
}

// Quotient and remainder; b nonzero.
template <class Ops>
std::pair<Vec<Ops>, Vec<Ops>> divrem(const Ops& ops, Vec<Ops> a, const Vec<Ops>& b) {
  trim(ops, a);
  if (a.size() < b.size()) return {{}, a};
  auto lc_inv = ops.inv(b.back());
  Vec<Ops> q(a.size() - b.size() + 1, ops.zero());
  for (std::size_t i = a.size(); i-- >= b.size();) {
    auto c = ops.mul(a[i], lc_inv);
    q[i - b.size() + 1] = c;
    if (!ops.is_zero(c))
      for (std::size_t j = 0; j < b.size(); ++j)
        a[i - b.size() + 1 + j] = ops.sub(a[i - b.size() + 1 + j], ops.mul(c, b[j]));
    if (i == 0) break;
  }
  a.resize(b.size() - 1);
  trim(ops, a);
  trim(ops, q);
  return {q, a};
}

template <class Ops>
Vec<Ops> rem(const Ops& ops, const Vec<Ops>& a, const Vec<Ops>& b) {
  return divrem(ops, a, b).second;
}

template <class Ops>
Vec<Ops> monic(const Ops& ops, const Vec<Ops>& a) {
  if (a.empty()) return a;
  return scale(ops, a, ops.inv(a.back()));
}

template <class Ops>
Vec<Ops> gcd(const Ops& ops, Vec<Ops> a, Vec<Ops> b) {
  trim(ops, a);
  trim(ops, b);
  while (!b.empty()) {
    auto r = rem(ops, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(ops, a);
}

template <class Ops>
Vec<Ops> derivative(const Ops& ops, const Vec<Ops>& a) {
  if (a.size() <= 1) return {};
  Vec<Ops> r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = ops.mul(a[i], ops.from_int(static_cast<long long>(i)));
  trim(ops, r);
  return r;
}

template <class Ops>
Vec<Ops> powmod(const Ops& ops, Vec<Ops> base, const mpz_class& exponent, const Vec<Ops>& m) {
  Vec<Ops> result{ops.one()};
  result = rem(ops, result, m);
  base = rem(ops, base, m);
  std::size_t bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(ops, mul(ops, result, result), m);
    if (mpz_tstbit(exponent.get_mpz_t(), i)) result = rem(ops, mul(ops, result, base), m);
  }
  return result;
}

template <class Ops>
Vec<Ops> x_poly(const Ops& ops) {
  return Vec<Ops>{ops.zero(), ops.one()};
}

// Square-free decomposition of a monic polynomial: list of (part, multiplicity)
// with part square-free and pairwise coprime.
template <class Ops>
std::vector<std::pair<Vec<Ops>, int>> squarefree(const Ops& ops, const Vec<Ops>& f) {
  std::vector<std::pair<Vec<Ops>, int>> out;
  if (f.size() <= 1) return out;
  Vec<Ops> one{ops.one()};
  auto c = gcd(ops, f, derivative(ops, f));
  auto w = divrem(ops, f, c).first;
  int i = 1;
  while (w.size() > 1) {
    auto y = gcd(ops, w, c);
    auto z = divrem(ops, w, y).first;
    if (z.size() > 1) out.emplace_back(monic(ops, z), i);
    ++i;
    w = y;
    c = divrem(ops, c, y).first;
  }
  if (c.size() > 1) {
    std::uint64_t p = ops.characteristic();
    Vec<Ops> root((c.size() - 1) / p + 1, ops.zero());
    for (std::size_t k = 0; k < c.size(); k += p) root[k / p] = ops.pth_root(c[k]);
    trim(ops, root);
    for (auto& [g, m] : squarefree(ops, monic(ops, root)))
      out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

// Distinct-degree factorization of a monic square-free polynomial.
template <class Ops>
std::vector<std::pair<Vec<Ops>, int>> distinct_degree(const Ops& ops, Vec<Ops> f) {
  std::vector<std::pair<Vec<Ops>, int>> out;
  mpz_class q = ops.order();
  auto x = x_poly(ops);
  auto h = rem(ops, x, f);
  int d = 0;
  while (f.size() > 1) {
    ++d;
    if (2 * d > deg<Ops>(f)) {
      out.emplace_back(f, deg<Ops>(f));
      break;
    }
    h = powmod(ops, h, q, f);
    auto g = gcd(ops, f, sub(ops, h, x));
    if (g.size() > 1) {
      out.emplace_back(g, d);
      f = divrem(ops, f, g).first;
      h = rem(ops, h, f);
    }
  }
  return out;
}

// Equal-degree splitting of a monic product of distinct irreducibles of
// degree d.
template <class Ops, class Rng>
void equal_degree(const Ops& ops, const Vec<Ops>& f, int d, Rng& rng,
                  std::vector<Vec<Ops>>& out) {
  int n = deg<Ops>(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  mpz_class q = ops.order();
  bool even = (q % 2 == 0);
  for (;;) {
    Vec<Ops> a(n, ops.zero());
    for (auto& c : a) c = ops.random(rng);
    trim(ops, a);
    if (a.size() <= 1) continue;
    Vec<Ops> b;
    if (!even) {
      mpz_class qd;
      mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), d);
      mpz_class e = (qd - 1) / 2;
      b = sub(ops, powmod(ops, a, e, f), Vec<Ops>{ops.one()});
    } else {
      // Trace map a + a^2 + ... + a^(2^(k d - 1)) with q = 2^k.
      unsigned k = mpz_sizeinbase(q.get_mpz_t(), 2) - 1;
      Vec<Ops> t = rem(ops, a, f), acc = t;
      for (unsigned i = 1; i < k * d; ++i) {
        t = rem(ops, mul(ops, t, t), f);
        acc = add(ops, acc, t);
      }
      b = acc;
    }
    auto g = gcd(ops, f, b);
    if (g.size() > 1 && deg<Ops>(g) < n) {
      equal_degree(ops, g, d, rng, out);
      equal_degree(ops, divrem(ops, f, g).first, d, rng, out);
      return;
    }
  }
}

// Monic irreducible factors with multiplicities of a nonzero polynomial;
// the unit is the leading coefficient.
template <class Ops>
std::vector<std::pair<Vec<Ops>, int>> factor(const Ops& ops, const Vec<Ops>& f) {
  std::vector<std::pair<Vec<Ops>, int>> out;
  std::mt19937_64 rng(0x6d696c6e6f726bULL);
  for (auto& [part, mult] : squarefree(ops, monic(ops, f))) {
    for (auto& [block, d] : distinct_degree(ops, part)) {
      std::vector<Vec<Ops>> pieces;
      equal_degree(ops, block, d, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(std::move(piece), mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  return out;
}

// Exact factorization over Q of a nonconstant polynomial (coefficients low
// to high). Returns the leading coefficient and monic irreducible factors.
std::pair<mpq_class, std::vector<std::pair<std::vector<mpq_class>, int>>> factor_rational(
    const std::vector<mpq_class>& f, int degree_cap);

// Factorization over a small F_q on integer codes.
std::vector<std::pair<std::vector<std::uint32_t>, int>> factor_fq(
    const FqArith& fq, const std::vector<std::uint32_t>& f);

}  // namespace milnork::upoly

#endif  // MILNORK_UPOLY_HPP_
