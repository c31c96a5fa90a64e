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

#include "milnork/valuation.hpp"

#include <algorithm>
#include <numeric>

#include "milnork/errors.hpp"

namespace milnork {

int lex_compare(const ValueVec& a, const ValueVec& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

namespace {

// ---- univariate helpers over a BaseField (coefficients low to high) ----
using UVec = std::vector<Scalar>;

void utrim(const BaseField& F, UVec& a) {
  while (!a.empty() && F.is_zero(a.back())) a.pop_back();
}

UVec umod(const BaseField& F, UVec a, const UVec& m) {
  utrim(F, a);
  Scalar inv = F.inv(m.back());
  while (a.size() >= m.size()) {
    Scalar c = F.mul(a.back(), inv);
    std::size_t off = a.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) a[off + j] = F.sub(a[off + j], F.mul(c, m[j]));
    a.pop_back();
    utrim(F, a);
  }
  return a;
}

UVec umul(const BaseField& F, const UVec& a, const UVec& b) {
  if (a.empty() || b.empty()) return {};
  UVec r(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  return r;
}

UVec usub(const BaseField& F, UVec a, const UVec& b) {
  if (a.size() < b.size()) a.resize(b.size(), Scalar(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  utrim(F, a);
  return a;
}

// Inverse of a modulo an irreducible m.
UVec uinv_mod(const BaseField& F, const UVec& a, const UVec& m) {
  UVec r0 = m, r1 = umod(F, a, m), s0{}, s1{Scalar(1)};
  if (r1.empty()) fail(ErrorKind::ZeroElement, "residue is zero");
  while (r1.size() > 1) {
    // One division step r0 = q*r1 + r.
    UVec q(r0.size() - r1.size() + 1, Scalar(0)), r = r0;
    Scalar inv = F.inv(r1.back());
    while (r.size() >= r1.size()) {
      Scalar c = F.mul(r.back(), inv);
      std::size_t off = r.size() - r1.size();
      q[off] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) r[off + j] = F.sub(r[off + j], F.mul(c, r1[j]));
      r.pop_back();
      utrim(F, r);
    }
    UVec s2 = usub(F, s0, umul(F, q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  Scalar c = F.inv(r1[0]);
  for (auto& x : s1) x = F.mul(x, c);
  return umod(F, s1, m);
}

UVec upoly_of(const Poly& p) {
  UVec v(p.is_zero() ? 0 : p.degree_in(0) + 1, Scalar(0));
  for (const auto& t : p.terms()) v[t.exps[0]] = t.coef;
  return v;
}

Poly poly_of(const RingPtr& ring, const UVec& v) {
  std::vector<Term> ts;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) ts.push_back({Monomial{static_cast<int>(i)}, v[i]});
  return Poly::from_terms(ring, std::move(ts));
}

long min_weight(const Poly& g, const std::vector<long>& u) {
  long best = 0;
  bool first = true;
  for (const auto& t : g.terms()) {
    long w = 0;
    for (std::size_t i = 0; i < u.size(); ++i) w += u[i] * t.exps[i];
    if (first || w < best) best = w;
    first = false;
  }
  return best;
}

long min_pval(const Poly& g, const mpz_class& p) {
  long best = 0;
  bool first = true;
  for (const auto& t : g.terms()) {
    mpq_class c = t.coef;
    long v = 0;
    mpz_class n = c.get_num(), d = c.get_den();
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    if (first || v < best) best = v;
    first = false;
  }
  return best;
}

long scalar_pval(const Scalar& c, const mpz_class& p) {
  mpz_class n = c.get_num(), d = c.get_den();
  long v = 0;
  while (n % p == 0) { n /= p; ++v; }
  while (d % p == 0) { d /= p; --v; }
  return v;
}

// RatFunc from Laurent terms (exponents may be negative).
RatFunc from_laurent(const RingPtr& ring, std::vector<std::pair<std::vector<long>, Scalar>> terms) {
  std::size_t n = ring->nvars();
  std::vector<long> low(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    low[i] = terms.empty() ? 0 : terms[0].first[i];
    for (const auto& [e, c] : terms) low[i] = std::min(low[i], e[i]);
  }
  std::vector<Term> ts;
  for (auto& [e, c] : terms) {
    Monomial m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(e[i] - low[i]);
    ts.push_back({std::move(m), c});
  }
  Poly p = Poly::from_terms(ring, std::move(ts));
  RatFunc r = RatFunc::from_poly(p);
  std::vector<std::pair<Poly, int>> mono;
  for (std::size_t i = 0; i < n; ++i)
    if (low[i] != 0) mono.emplace_back(Poly::variable(ring, i), static_cast<int>(low[i]));
  if (mono.empty()) return r;
  return r * RatFunc::from_factors(ring, 1, std::move(mono));
}

std::string laurent_name(const Ring& ring, const std::vector<long>& col) {
  int nz = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < col.size(); ++i)
    if (col[i] != 0) { ++nz; at = i; }
  if (nz == 1 && col[at] == 1) return ring.vars[at];
  std::string s = "[";
  bool first = true;
  for (std::size_t i = 0; i < col.size(); ++i) {
    if (col[i] == 0) continue;
    if (!first) s += '*';
    first = false;
    s += ring.vars[i];
    if (col[i] != 1) s += '^' + std::to_string(col[i]);
  }
  return s + "]";
}

std::vector<std::vector<long>> integer_inverse(const std::vector<std::vector<long>>& W) {
  std::size_t n = W.size();
  linalg::QMatrix m(n, linalg::QVector(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = W[i][j];
    m[i][n + i] = 1;
  }
  linalg::rref(m, 2 * n);
  std::vector<std::vector<long>> inv(n, std::vector<long>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (m[i][n + j].get_den() != 1) fail(ErrorKind::InvalidArgument, "matrix is not unimodular");
      inv[i][j] = m[i][n + j].get_num().get_si();
    }
  return inv;
}

}  // namespace

std::vector<std::vector<long>> unimodular_completion(const std::vector<long>& u) {
  std::size_t s = u.size();
  long g = 0;
  for (long x : u) g = std::gcd(g, x);
  if (g != 1) fail(ErrorKind::InvalidArgument, "weight vector must be primitive");
  std::vector<std::vector<long>> W(s, std::vector<long>(s, 0));
  // Prefer a pivot entry of absolute value one: short, readable columns.
  for (std::size_t k = 0; k < s; ++k) {
    if (u[k] != 1 && u[k] != -1) continue;
    std::size_t col = 1;
    W[k][0] = u[k];
    for (std::size_t j = 0; j < s; ++j) {
      if (j == k) continue;
      W[j][col] = 1;
      W[k][col] = -u[j] * u[k];
      ++col;
    }
    return W;
  }
  // General case: column Euclid on the row vector, mirrored on W.
  std::vector<long> r = u;
  for (std::size_t i = 0; i < s; ++i) W[i][i] = 1;
  auto colop = [&](std::size_t dst, std::size_t src, long q) {
    r[dst] -= q * r[src];
    for (std::size_t i = 0; i < s; ++i) W[i][dst] -= q * W[i][src];
  };
  auto colswap = [&](std::size_t a, std::size_t b) {
    std::swap(r[a], r[b]);
    for (std::size_t i = 0; i < s; ++i) std::swap(W[i][a], W[i][b]);
  };
  for (;;) {
    std::size_t piv = s;
    for (std::size_t i = 0; i < s; ++i)
      if (r[i] != 0 && (piv == s || std::labs(r[i]) < std::labs(r[piv]))) piv = i;
    bool done = true;
    for (std::size_t i = 0; i < s; ++i) {
      if (i == piv || r[i] == 0) continue;
      colop(i, piv, r[i] / r[piv]);
      if (r[i] != 0) done = false;
    }
    if (done) {
      colswap(0, piv);
      if (r[0] < 0)
        for (std::size_t i = 0; i < s; ++i) W[i][0] = -W[i][0];
      return W;
    }
  }
}

Level make_graph_level(const Poly& pi) {
  Level lv;
  lv.in = pi.ring();
  lv.pi = pi;
  std::size_t n = lv.in->nvars();
  for (std::size_t j = 0; j < n; ++j) {
    if (pi.degree_in(j) != 1) continue;
    auto cs = pi.coefficients_in(j);
    lv.kind = Level::Kind::Graph;
    lv.var = j;
    lv.A = cs[1];
    lv.B = -cs[0];
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) names.push_back(lv.in->vars[k]);
    lv.out = make_ring(lv.in->field, names);
    return lv;
  }
  std::size_t used = pi.num_vars_used();
  if (n == 1 && used == 1) {
    lv.kind = Level::Kind::Finite;
    lv.out = make_ring(lv.in->field, {});
  } else {
    lv.kind = Level::Kind::Opaque;
  }
  return lv;
}

Level make_monomial_level(RingPtr in, const std::vector<long>& u) {
  if (u.size() != in->nvars()) fail(ErrorKind::InvalidArgument, "weight vector has wrong length");
  // A positive unit vector is the graph level of a variable.
  int nz = 0;
  std::size_t at = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] != 0) { ++nz; at = i; }
  if (nz == 1 && u[at] == 1) return make_graph_level(Poly::variable(in, at));
  Level lv;
  lv.kind = Level::Kind::Monomial;
  lv.in = in;
  lv.u = u;
  lv.W = unimodular_completion(u);
  lv.V = integer_inverse(lv.W);
  std::vector<std::string> names;
  for (std::size_t j = 1; j < u.size(); ++j) {
    std::vector<long> col(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) col[i] = lv.W[i][j];
    names.push_back(laurent_name(*in, col));
  }
  lv.out = make_ring(in->field, names);
  return lv;
}

std::string Level::descriptor() const {
  switch (kind) {
    case Kind::Graph:
    case Kind::Finite:
    case Kind::Opaque:
      return "pi:" + pi.to_string();
    case Kind::Prime:
      return "prime:" + p.get_str();
    case Kind::Monomial: {
      bool deg = true;
      for (long x : u)
        if (x != -1 && x != 0) deg = false;
      if (deg) {
        bool all = std::all_of(u.begin(), u.end(), [](long x) { return x == -1; });
        if (all) return "deg";
        std::string s = "deg:[";
        bool first = true;
        for (std::size_t i = 0; i < u.size(); ++i) {
          if (u[i] == 0) continue;
          if (!first) s += ',';
          first = false;
          s += in->vars[i];
        }
        return s + "]";
      }
      std::string s = "mono:[";
      for (std::size_t i = 0; i < u.size(); ++i) s += (i ? "," : "") + std::to_string(u[i]);
      return s + "]";
    }
  }
  return "?";
}

long level_order(const Level& lv, const RatFunc& f) {
  switch (lv.kind) {
    case Level::Kind::Graph:
    case Level::Kind::Finite:
    case Level::Kind::Opaque:
      return f.exponent_of(lv.pi);
    case Level::Kind::Monomial: {
      long v = 0;
      for (const auto& [g, e] : f.factors()) v += e * min_weight(g, lv.u);
      return v;
    }
    case Level::Kind::Prime: {
      long v = scalar_pval(f.unit(), lv.p);
      for (const auto& [g, e] : f.factors()) v += e * min_pval(g, lv.p);
      return v;
    }
  }
  return 0;
}

RatFunc level_residue_shifted(const Level& lv, const RatFunc& f) {
  const BaseField& F = lv.in->field;
  switch (lv.kind) {
    case Level::Kind::Graph: {
      std::size_t n = lv.in->nvars();
      std::vector<std::size_t> map(n, 0);
      for (std::size_t k = 0, c = 0; k < n; ++k)
        if (k != lv.var) map[k] = c++;
      auto to_out = [&](const Poly& p) {
        // p is free of the substituted variable.
        std::vector<std::size_t> m = map;
        m[lv.var] = 0;
        return p.mapped(lv.out, m);
      };
      RatFunc acc = RatFunc::constant(lv.out, f.unit());
      for (const auto& [g, e] : f.factors()) {
        if (g == lv.pi) continue;
        auto cs = g.coefficients_in(lv.var);
        std::size_t d = cs.size() - 1;
        Poly num(lv.in);
        for (std::size_t k = 0; k <= d; ++k)
          num += cs[k] * lv.B.pow(static_cast<unsigned>(k)) * lv.A.pow(static_cast<unsigned>(d - k));
        if (num.is_zero()) fail(ErrorKind::InvalidArgument, "factor vanishes on the place");
        RatFunc r = RatFunc::normalize(to_out(num), to_out(lv.A.pow(static_cast<unsigned>(d))));
        acc = acc * r.pow(e);
      }
      return acc;
    }
    case Level::Kind::Monomial: {
      std::size_t s = lv.u.size();
      RatFunc acc = RatFunc::constant(lv.out, f.unit());
      for (const auto& [g, e] : f.factors()) {
        long c = min_weight(g, lv.u);
        std::vector<std::pair<std::vector<long>, Scalar>> init;
        for (const auto& t : g.terms()) {
          std::vector<long> z(s, 0);
          for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) z[i] += lv.V[i][j] * t.exps[j];
          if (z[0] != c) continue;
          init.emplace_back(std::vector<long>(z.begin() + 1, z.end()), t.coef);
        }
        acc = acc * from_laurent(lv.out, std::move(init)).pow(e);
      }
      return acc;
    }
    case Level::Kind::Prime: {
      const BaseField Fp = lv.out->field;
      auto reduce = [&](const Scalar& c) {
        mpq_class v = c;
        long k = scalar_pval(c, lv.p);
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), lv.p.get_mpz_t(), static_cast<unsigned long>(std::labs(k)));
        if (k > 0) v /= pk;
        else if (k < 0) v *= pk;
        return Fp.from_rational(v);
      };
      RatFunc acc = RatFunc::constant(lv.out, reduce(f.unit()));
      for (const auto& [g, e] : f.factors()) {
        long m = min_pval(g, lv.p);
        mpz_class pk;
        mpz_pow_ui(pk.get_mpz_t(), lv.p.get_mpz_t(), static_cast<unsigned long>(std::labs(m)));
        std::vector<Term> ts;
        for (const auto& t : g.terms()) {
          mpq_class v = t.coef;
          if (m > 0) v /= pk;
          else if (m < 0) v *= pk;
          if (v.get_den() % lv.p == 0) continue;
          Scalar r = Fp.from_rational(v);
          if (!Fp.is_zero(r)) ts.push_back({t.exps, r});
        }
        acc = acc * RatFunc::from_poly(Poly::from_terms(lv.out, std::move(ts))).pow(e);
      }
      return acc;
    }
    case Level::Kind::Finite:
    case Level::Kind::Opaque:
      break;
  }
  (void)F;
  fail(ErrorKind::UnsupportedShape, "residue field is not a rational function field");
}

// ---- Residue ----

bool Residue::is_one() const {
  if (kind == Kind::Function) return func.is_one();
  return coeffs.size() == 1 && coeffs[0] == 1;
}

std::string Residue::to_string() const {
  if (kind == Kind::Function) return func.to_string();
  return poly_of(base, coeffs).to_string();
}

bool Residue::operator==(const Residue& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::Function) return func == o.func;
  return coeffs == o.coeffs && modulus == o.modulus;
}

// ---- Valuation ----

Valuation Valuation::trivial(RingPtr ring) {
  Valuation v;
  v.ring_ = std::move(ring);
  return v;
}

Valuation Valuation::from_levels(RingPtr ring, std::vector<Level> levels) {
  Valuation v;
  v.ring_ = std::move(ring);
  v.levels_ = std::move(levels);
  for (std::size_t i = 0; i + 1 < v.levels_.size(); ++i) {
    auto k = v.levels_[i].kind;
    if (k == Level::Kind::Finite || k == Level::Kind::Opaque)
      fail(ErrorKind::UnsupportedShape, "only the last level may lack a rational residue field");
  }
  return v;
}

Valuation Valuation::pi_adic(const Poly& pi) {
  if (pi.is_constant()) fail(ErrorKind::InvalidArgument, "place polynomial must be nonconstant");
  auto fz = factor(pi);
  if (fz.factors.size() != 1 || fz.factors[0].second != 1)
    fail(ErrorKind::InvalidArgument, "place polynomial must be irreducible: " + pi.to_string());
  return from_levels(pi.ring(), {make_graph_level(fz.factors[0].first)});
}

Valuation Valuation::degree_place(RingPtr ring, std::vector<std::size_t> vars) {
  std::vector<long> u(ring->nvars(), 0);
  if (vars.empty())
    for (std::size_t i = 0; i < u.size(); ++i) vars.push_back(i);
  for (auto i : vars) u.at(i) = -1;
  if (u.empty()) fail(ErrorKind::InvalidArgument, "degree place needs a variable");
  return from_levels(ring, {make_monomial_level(ring, u)});
}

Valuation Valuation::rational_prime(RingPtr ring, const mpz_class& p) {
  if (!ring->field.is_rational()) fail(ErrorKind::InvalidArgument, "prime places exist only over Q");
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
    fail(ErrorKind::InvalidArgument, "not a prime: " + p.get_str());
  if (p > 65521) fail(ErrorKind::UnsupportedShape, "prime too large for residue arithmetic");
  Level lv;
  lv.kind = Level::Kind::Prime;
  lv.in = ring;
  lv.p = p;
  lv.out = make_ring(BaseField::finite(static_cast<std::uint32_t>(p.get_ui())), ring->vars);
  return from_levels(ring, {lv});
}

Valuation Valuation::composite(RingPtr ring, const std::vector<RatFunc>& seq) {
  std::vector<Level> levels;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    RatFunc cur = seq[i];
    for (const auto& lv : levels) {
      if (level_order(lv, cur) != 0)
        fail(ErrorKind::NotIndependent, "sequence entry has nonzero value at an earlier level");
      cur = level_residue_shifted(lv, cur);
    }
    if (cur.factors().size() != 1 || cur.factors()[0].second != 1) {
      if (cur.is_constant()) fail(ErrorKind::NotIndependent, "sequence entries are algebraically dependent");
      fail(ErrorKind::UnsupportedShape, "sequence entry does not reduce to an irreducible: " + cur.to_string());
    }
    Level lv = make_graph_level(cur.factors()[0].first);
    if (lv.kind != Level::Kind::Graph && i + 1 != seq.size())
      fail(ErrorKind::UnsupportedShape, "inner sequence entries must be graph-type");
    levels.push_back(std::move(lv));
  }
  return from_levels(std::move(ring), std::move(levels));
}

Valuation Valuation::monomial(RingPtr ring, const std::vector<std::vector<long>>& rows) {
  std::vector<Level> levels;
  RingPtr cur = ring;
  // Each row is re-expressed in the monomial coordinates of the residue ring.
  std::vector<std::vector<long>> basis;  // columns: exponent of current coords in original vars
  std::size_t n = ring->nvars();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<long> e(n, 0);
    e[i] = 1;
    basis.push_back(e);
  }
  for (const auto& row : rows) {
    if (row.size() != n) fail(ErrorKind::InvalidArgument, "weight row has wrong length");
    std::vector<long> u(basis.size(), 0);
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t i = 0; i < n; ++i) u[j] += row[i] * basis[j][i];
    long g = 0;
    for (long x : u) g = std::gcd(g, x);
    if (g == 0) fail(ErrorKind::InvalidArgument, "weight rows are dependent");
    if (g != 1) fail(ErrorKind::InvalidArgument, "weight rows do not span a saturated lattice");
    Level lv = make_monomial_level(cur, u);
    // New coordinate columns.
    std::vector<std::vector<long>> next;
    if (lv.kind == Level::Kind::Graph) {
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != lv.var) next.push_back(basis[j]);
    } else {
      for (std::size_t c = 1; c < basis.size(); ++c) {
        std::vector<long> col(n, 0);
        for (std::size_t j = 0; j < basis.size(); ++j)
          for (std::size_t i = 0; i < n; ++i) col[i] += lv.W[j][c] * basis[j][i];
        next.push_back(col);
      }
    }
    basis = std::move(next);
    cur = lv.out;
    levels.push_back(std::move(lv));
  }
  return from_levels(std::move(ring), std::move(levels));
}

bool Valuation::residue_is_rational_function_field() const {
  for (const auto& lv : levels_)
    if (lv.kind == Level::Kind::Finite || lv.kind == Level::Kind::Opaque) return false;
  return true;
}

std::size_t Valuation::residue_trdeg() const {
  if (levels_.empty()) return ring_->nvars();
  const Level& last = levels_.back();
  if (last.kind == Level::Kind::Finite) return 0;
  if (last.kind == Level::Kind::Opaque) return last.in->nvars() - 1;
  return last.out->nvars();
}

ValueVec Valuation::value(const RatFunc& f) const {
  ValueVec out;
  RatFunc cur = f;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    long o = level_order(levels_[i], cur);
    out.push_back(o);
    if (i + 1 < levels_.size()) cur = level_residue_shifted(levels_[i], cur);
  }
  return out;
}

Residue Valuation::residue(const RatFunc& f) const {
  ValueVec v = value(f);
  for (long x : v)
    if (x != 0) fail(ErrorKind::NotAUnit, "element is not a unit at the valuation");
  Residue r;
  RatFunc cur = f;
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    if (lv.kind == Level::Kind::Finite) {
      const BaseField& F = lv.in->field;
      UVec m = upoly_of(lv.pi);
      UVec acc{cur.unit()};
      for (const auto& [g, e] : cur.factors()) {
        UVec gm = umod(F, upoly_of(g), m);
        if (e < 0) gm = uinv_mod(F, gm, m);
        for (int k = 0; k < std::abs(e); ++k) acc = umod(F, umul(F, acc, gm), m);
      }
      r.kind = Residue::Kind::Extension;
      r.base = lv.in;
      r.coeffs = acc;
      r.modulus = m;
      return r;
    }
    cur = level_residue_shifted(lv, cur);
  }
  r.func = cur;
  return r;
}

Valuation Valuation::coarsen(std::size_t drop) const {
  if (drop > levels_.size()) fail(ErrorKind::InvalidArgument, "cannot drop more levels than the rank");
  Valuation v = *this;
  v.levels_.resize(levels_.size() - drop);
  return v;
}

bool Valuation::is_coarsening_of(const Valuation& w) const {
  if (levels_.size() > w.levels_.size()) return false;
  for (std::size_t i = 0; i < levels_.size(); ++i)
    if (levels_[i].descriptor() != w.levels_[i].descriptor()) return false;
  return true;
}

namespace {

// Lift an element of the residue ring of lv back into its input ring
// (a section of the residue map on units).
RatFunc lift_through(const Level& lv, const RatFunc& f) {
  if (lv.kind == Level::Kind::Graph || lv.kind == Level::Kind::Prime) {
    std::vector<std::size_t> map;
    for (std::size_t k = 0; k < lv.in->nvars(); ++k)
      if (lv.kind == Level::Kind::Prime || k != lv.var) map.push_back(k);
    if (lv.kind == Level::Kind::Prime) fail(ErrorKind::UnsupportedShape, "cannot lift through a prime place");
    std::vector<std::pair<Poly, int>> fs;
    for (const auto& [g, e] : f.factors()) fs.emplace_back(g.mapped(lv.in, map), e);
    return RatFunc::from_factors(lv.in, f.unit(), std::move(fs));
  }
  if (lv.kind == Level::Kind::Monomial) {
    std::size_t s = lv.u.size();
    RatFunc acc = RatFunc::constant(lv.in, f.unit());
    for (const auto& [g, e] : f.factors()) {
      std::vector<std::pair<std::vector<long>, Scalar>> ts;
      for (const auto& t : g.terms()) {
        std::vector<long> w(s, 0);
        for (std::size_t i = 0; i < s; ++i)
          for (std::size_t j = 1; j < s; ++j) w[i] += lv.W[i][j] * t.exps[j - 1];
        ts.emplace_back(std::move(w), t.coef);
      }
      acc = acc * from_laurent(lv.in, std::move(ts)).pow(e);
    }
    return acc;
  }
  fail(ErrorKind::UnsupportedShape, "cannot lift through this level");
}

}  // namespace

RatFunc Valuation::uniformizer(std::size_t level) const {
  const Level& lv = levels_.at(level);
  RatFunc u;
  switch (lv.kind) {
    case Level::Kind::Graph:
    case Level::Kind::Finite:
    case Level::Kind::Opaque:
      u = RatFunc::from_factors(lv.in, 1, {{lv.pi, 1}});
      break;
    case Level::Kind::Prime:
      u = RatFunc::constant(lv.in, lv.p);
      break;
    case Level::Kind::Monomial: {
      std::vector<long> col(lv.u.size());
      for (std::size_t i = 0; i < col.size(); ++i) col[i] = lv.W[i][0];
      u = from_laurent(lv.in, {{col, Scalar(1)}});
      break;
    }
  }
  for (std::size_t i = level; i-- > 0;) u = lift_through(levels_[i], u);
  return u;
}

std::string Valuation::descriptor() const {
  if (levels_.empty()) return "trivial";
  if (levels_.size() == 1) return levels_[0].descriptor();
  bool graphs = std::all_of(levels_.begin(), levels_.end(),
                            [](const Level& l) { return l.kind == Level::Kind::Graph || l.kind == Level::Kind::Finite || l.kind == Level::Kind::Opaque; });
  std::string s = "comp:[";
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (i) s += ", ";
    if (graphs) s += levels_[i].pi.to_string();
    else s += levels_[i].descriptor();
  }
  return s + "]";
}

}  // namespace milnork
