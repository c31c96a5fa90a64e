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

#include "milnork/symbols.hpp"

#include <algorithm>
#include <set>

#include "milnork/eliminate.hpp"
#include "milnork/errors.hpp"

namespace milnork {

// ---- K2Class ----

K2Class K2Class::symbol(const RatFunc& f, const RatFunc& g, long coef) {
  K2Class c(f.ring());
  c.add(f, g, coef);
  return c;
}

void K2Class::add(const RatFunc& f, const RatFunc& g, long coef) {
  if (!ring_) ring_ = f.ring();
  if (coef == 0) return;
  for (auto& t : terms_) {
    if (t.f == f && t.g == g) {
      t.coef += coef;
      if (t.coef == 0) terms_.erase(terms_.begin() + (&t - terms_.data()));
      return;
    }
  }
  terms_.push_back({f, g, coef});
}

K2Class K2Class::operator+(const K2Class& o) const {
  K2Class r = *this;
  if (!r.ring_) r.ring_ = o.ring_;
  for (const auto& t : o.terms_) r.add(t.f, t.g, t.coef);
  return r;
}

K2Class K2Class::scaled(long k) const {
  K2Class r(ring_);
  for (const auto& t : terms_) r.add(t.f, t.g, t.coef * k);
  return r;
}

std::vector<Poly> K2Class::irreducibles() const {
  std::vector<Poly> out;
  for (const auto& t : terms_)
    for (const RatFunc* e : {&t.f, &t.g})
      for (const auto& [p, m] : e->factors())
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

std::string K2Class::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = terms_[i];
    long c = t.coef;
    if (i) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (std::labs(c) != 1) s += std::to_string(std::labs(c)) + "*";
    s += "{" + t.f.to_string() + ", " + t.g.to_string() + "}";
  }
  return s;
}

// ---- integer factoring of small constants ----

std::vector<std::pair<mpz_class, long>> factor_integer(mpz_class n) {
  std::vector<std::pair<mpz_class, long>> out;
  if (n < 0) n = -n;
  for (mpz_class p = 2; p * p <= n; ++p) {
    if (p > 10000000) break;
    long e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0)
      fail(ErrorKind::UnsupportedShape, "constant too large to factor: " + n.get_str());
    out.emplace_back(n, 1);
  }
  return out;
}

namespace {

// ---- normal form of K2 classes ----

// Atoms: 'I' irreducible, 'P' rational prime, 'M' minus one, 'G' generator
// of F_q^x. Keys sort irreducibles first.
struct AtomKey {
  char kind;
  std::string text;
  bool operator<(const AtomKey& o) const {
    auto rank = [](char k) { return k == 'I' ? 0 : k == 'P' ? 1 : k == 'M' ? 2 : 3; };
    if (rank(kind) != rank(o.kind)) return rank(kind) < rank(o.kind);
    if (kind == 'P' && text.size() != o.text.size()) return text.size() < o.text.size();
    return text < o.text;
  }
  bool operator==(const AtomKey& o) const { return kind == o.kind && text == o.text; }
  bool constant() const { return kind != 'I'; }
};

using Coord = std::pair<AtomKey, AtomKey>;

struct NormalForm {
  std::map<Coord, mpz_class> v;
  void add(const Coord& c, const mpz_class& x) {
    auto& e = v[c];
    e += x;
    if (e == 0) v.erase(c);
  }
};

struct Expander {
  const BaseField& F;
  std::map<std::string, Poly> irr;  // text -> poly

  std::vector<std::pair<AtomKey, mpz_class>> expand(const RatFunc& f) {
    std::vector<std::pair<AtomKey, mpz_class>> out;
    for (const auto& [p, e] : f.factors()) {
      std::string t = p.to_string();
      irr.emplace(t, p);
      out.push_back({{'I', t}, mpz_class(e)});
    }
    const Scalar& u = f.unit();
    if (F.is_finite()) {
      if (u != 1) out.push_back({{'G', ""}, mpz_class(F.fq().log(F.to_code(u)))});
    } else {
      if (sgn(u) < 0) out.push_back({{'M', ""}, 1});
      for (auto& [p, e] : factor_integer(u.get_num())) out.push_back({{'P', p.get_str()}, e});
      for (auto& [p, e] : factor_integer(u.get_den())) out.push_back({{'P', p.get_str()}, -e});
    }
    return out;
  }

  void pair(NormalForm& nf, const AtomKey& a, const AtomKey& b, const mpz_class& c) {
    if (c == 0) return;
    if (F.is_finite() && a.constant() && b.constant()) return;
    if (a == b) {
      // {a, a} = {a, -1}.
      if (F.is_finite()) {
        if (F.characteristic() == 2) return;
        nf.add({a, {'G', ""}}, c * ((F.order() - 1) / 2));
      } else {
        if (a.kind == 'M') nf.add({a, a}, c);
        else nf.add({a, {'M', ""}}, c);
      }
      return;
    }
    if (b < a) nf.add({b, a}, -c);
    else nf.add({a, b}, c);
  }

  NormalForm symbol(const RatFunc& f, const RatFunc& g, long coef) {
    NormalForm nf;
    auto ef = expand(f), eg = expand(g);
    for (const auto& [a, x] : ef)
      for (const auto& [b, y] : eg) pair(nf, a, b, x * y * coef);
    return nf;
  }

  // Order of the coordinate in the group (0 when torsion-free).
  mpz_class torsion(const Coord& c) const {
    if (F.is_finite()) return F.order() - 1;  // only (I, G) survives over F_q
    if (c.first.kind == 'M' || c.second.kind == 'M') return 2;
    return 0;
  }

  RatFunc atom_value(const RingPtr& ring, const AtomKey& a) const {
    switch (a.kind) {
      case 'I':
        return RatFunc::from_factors(ring, 1, {{irr.at(a.text), 1}});
      case 'P':
        return RatFunc::constant(ring, mpq_class(mpz_class(a.text)));
      case 'M':
        return RatFunc::constant(ring, -1);
      default:
        return RatFunc::constant(ring, F.from_code(F.fq().generator()));
    }
  }
};

void add_into(NormalForm& acc, const NormalForm& x, long k = 1) {
  for (const auto& [c, e] : x.v) acc.add(c, e * k);
}

// Target in the lattice generated by instance vectors and torsion relations?
bool lattice_contains(const Expander& ex, const NormalForm& target, const std::vector<NormalForm>& gens) {
  std::map<Coord, std::size_t> idx;
  auto reg = [&](const NormalForm& nf) {
    for (const auto& [c, e] : nf.v) idx.emplace(c, 0);
  };
  reg(target);
  for (const auto& g : gens) reg(g);
  std::size_t n = 0;
  for (auto& [c, i] : idx) i = n++;
  linalg::ZMatrix rows;
  for (const auto& g : gens) {
    linalg::ZVector r(n, 0);
    for (const auto& [c, e] : g.v) r[idx[c]] = e;
    rows.push_back(std::move(r));
  }
  for (const auto& [c, i] : idx) {
    mpz_class t = ex.torsion(c);
    if (t == 0) continue;
    linalg::ZVector r(n, 0);
    r[i] = t;
    rows.push_back(std::move(r));
  }
  linalg::ZVector tv(n, 0);
  for (const auto& [c, e] : target.v) tv[idx[c]] = e;
  if (rows.empty()) return target.v.empty();
  return linalg::in_lattice(linalg::hnf(rows, n), tv);
}

std::vector<Scalar> small_constants(const BaseField& F) {
  std::vector<Scalar> cs;
  if (F.is_finite() && F.order() <= 16) {
    for (auto u : F.units()) cs.push_back(u);
    return cs;
  }
  for (long v : {1, -1, 2, -2, 3, -3}) {
    Scalar s = F.from_int(v);
    if (!F.is_zero(s) && std::find(cs.begin(), cs.end(), s) == cs.end()) cs.push_back(s);
  }
  if (F.is_rational()) {
    cs.push_back(mpq_class(1, 2));
    cs.push_back(mpq_class(-1, 2));
  }
  return cs;
}

}  // namespace

SteinbergResult steinberg_reduce(const K2Class& c, long budget) {
  SteinbergResult res;
  if (c.empty()) {
    res.zero = true;
    res.reduced = c;
    return res;
  }
  const RingPtr& ring = c.ring();
  Expander ex{ring->field, {}};
  NormalForm target;
  for (const auto& t : c.terms()) add_into(target, ex.symbol(t.f, t.g, t.coef));

  std::vector<NormalForm> gens;
  std::vector<RatFunc> hs;
  auto try_instance = [&](const RatFunc& h) {
    if (h.is_one()) return;
    if (std::find(hs.begin(), hs.end(), h) != hs.end()) return;
    ++res.steps;
    RatFunc om;
    try {
      om = h.one_minus();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ZeroElement) return;
      if (e.kind() == ErrorKind::UnsupportedShape || e.kind() == ErrorKind::DegreeCapExceeded) return;
      throw;
    }
    hs.push_back(h);
    gens.push_back(ex.symbol(h, om, 1));
  };
  auto check = [&]() {
    if (lattice_contains(ex, target, gens)) {
      res.zero = true;
      return true;
    }
    return false;
  };

  bool done = check();
  // Direct instances among the entries.
  if (!done) {
    for (const auto& t : c.terms()) {
      try {
        if (t.g == t.f.one_minus()) try_instance(t.f);
        else if (t.f == t.g.one_minus()) try_instance(t.g);
      } catch (const Error&) {
      }
    }
    done = check();
  }
  // Bounded products of the irreducibles with small constants.
  if (!done) {
    std::vector<RatFunc> base;
    for (const auto& p : c.irreducibles()) base.push_back(RatFunc::from_factors(ring, 1, {{p, 1}}));
    for (const auto& t : c.terms()) {
      base.push_back(t.f);
      base.push_back(t.g);
    }
    std::vector<RatFunc> monos;
    for (const auto& b : base) {
      monos.push_back(b);
      monos.push_back(b.inverse());
    }
    std::size_t nb = monos.size();
    for (std::size_t i = 0; i < nb; ++i)
      for (std::size_t j = i + 1; j < nb; ++j)
        if (j / 2 != i / 2) monos.push_back(monos[i] * monos[j]);
    auto consts = small_constants(ring->field);
    std::size_t since = 0;
    for (const auto& m : monos) {
      for (const auto& k : consts) {
        if (res.steps >= budget) {
          res.budget_exceeded = true;
          break;
        }
        try_instance(m * RatFunc::constant(ring, k));
        if (++since >= 64) {
          since = 0;
          if ((done = check())) break;
        }
      }
      if (done || res.budget_exceeded) break;
    }
    if (!done) done = check();
  }

  if (done) {
    res.reduced = K2Class(ring);
    res.instances = hs;
    return res;
  }
  // Report the normal form, reduced modulo torsion.
  K2Class out(ring);
  for (const auto& [coord, e] : target.v) {
    mpz_class t = ex.torsion(coord), k = e;
    if (t != 0) {
      mpz_fdiv_r(k.get_mpz_t(), e.get_mpz_t(), t.get_mpz_t());
      if (k == 0) continue;
    }
    out.add(ex.atom_value(ring, coord.first), ex.atom_value(ring, coord.second), k.get_si());
  }
  res.reduced = out;
  res.zero = out.empty();
  return res;
}

Residue tame_symbol(const Valuation& v, const K2Class& c) {
  if (v.rank() != 1) fail(ErrorKind::RankNotOne, "tame symbols need a rank-one valuation");
  const RingPtr& ring = v.ring();
  RatFunc h = RatFunc::constant(ring, 1);
  for (const auto& t : c.terms()) {
    long a = v.value(t.f)[0], b = v.value(t.g)[0];
    RatFunc piece = t.f.pow(b) / t.g.pow(a);
    if ((a * b) % 2 != 0) piece = -piece;
    h = h * piece.pow(t.coef);
  }
  return v.residue(h);
}

Scalar residue_norm(const Residue& r) {
  if (r.kind == Residue::Kind::Function) {
    if (!r.func.is_constant()) fail(ErrorKind::InvalidArgument, "residue is not a constant");
    return r.func.unit();
  }
  const RingPtr& ring = r.base;
  auto to_poly = [&](const std::vector<Scalar>& v) {
    std::vector<Term> ts;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sgn(v[i]) != 0) ts.push_back({Monomial{static_cast<int>(i)}, v[i]});
    return Poly::from_terms(ring, std::move(ts));
  };
  Poly m = to_poly(r.modulus), a = to_poly(r.coeffs);
  // Res(m, a) for monic m is the product of a over the roots of m.
  return resultant(m.monic(), a, 0).constant_term();
}

int hilbert_symbol_2(const mpq_class& x, const mpq_class& y) {
  auto split = [](const mpq_class& q) {
    mpz_class n = q.get_num() * q.get_den();
    long a = 0;
    while (n % 2 == 0) { n /= 2; ++a; }
    return std::pair<long, mpz_class>(a, n);
  };
  auto [a, u] = split(x);
  auto [b, w] = split(y);
  auto eps = [](const mpz_class& v) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 4);
    return r == 3 ? 1 : 0;
  };
  auto omega = [](const mpz_class& v) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), 8);
    return (r == 3 || r == 5) ? 1 : 0;
  };
  long e = eps(u) * eps(w) + a * omega(w) + b * omega(u);
  return e % 2 == 0 ? 1 : -1;
}

namespace {

struct ConstSymbol {
  mpq_class x, y;
  long coef;
};

// K2(Q) decision: tame symbols at odd primes plus the 2-adic Hilbert symbol.
void tate_decide(const std::vector<ConstSymbol>& syms, K2Verdict& out) {
  std::set<mpz_class> primes;
  for (const auto& s : syms)
    for (const mpq_class* q : {&s.x, &s.y})
      for (const mpz_class* z : {&q->get_num(), &q->get_den()})
        for (auto& [p, e] : factor_integer(*z))
          if (p != 2) primes.insert(p);
  out.has_constant_part = true;
  int h = 1;
  for (const auto& s : syms)
    if (hilbert_symbol_2(s.x, s.y) == -1 && s.coef % 2 != 0) h = -h;
  out.hilbert2 = h;
  bool trivial = h == 1;
  for (const auto& p : primes) {
    mpz_class acc = 1;
    for (const auto& s : syms) {
      auto val = [&](const mpq_class& q) {
        long v = 0;
        mpz_class n = q.get_num(), d = q.get_den();
        while (n % p == 0) { n /= p; ++v; }
        while (d % p == 0) { d /= p; --v; }
        return v;
      };
      long a = val(s.x), b = val(s.y);
      // (-1)^{ab} x^b y^{-a}, reduced mod p.
      auto red = [&](const mpq_class& q, long k) {
        mpz_class n = q.get_num(), d = q.get_den(), r;
        mpz_class pk;
        long v = val(q);
        mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
        if (v > 0) n /= pk;
        if (v < 0) d /= pk;
        mpz_class di;
        mpz_invert(di.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t());
        mpz_class base = n * di;
        mpz_fdiv_r(base.get_mpz_t(), base.get_mpz_t(), p.get_mpz_t());
        if (k < 0) {
          mpz_invert(base.get_mpz_t(), base.get_mpz_t(), p.get_mpz_t());
          k = -k;
        }
        mpz_powm_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(k), p.get_mpz_t());
        return r;
      };
      mpz_class term = red(s.x, b) * red(s.y, -a);
      if ((a * b) % 2 != 0) term = -term;
      mpz_class tc = term;
      long k = s.coef;
      mpz_fdiv_r(tc.get_mpz_t(), tc.get_mpz_t(), p.get_mpz_t());
      if (k < 0) {
        mpz_invert(tc.get_mpz_t(), tc.get_mpz_t(), p.get_mpz_t());
        k = -k;
      }
      mpz_powm_ui(tc.get_mpz_t(), tc.get_mpz_t(), static_cast<unsigned long>(k), p.get_mpz_t());
      acc = acc * tc % p;
    }
    if (acc != 1) {
      trivial = false;
      out.prime_residues["prime:" + p.get_str()] = acc.get_str();
    }
  }
  out.outcome = trivial ? K2Verdict::Outcome::Zero : K2Verdict::Outcome::NonZero;
}

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

K2Verdict k2_zero(const K2Class& c, long steinberg_budget) {
  K2Verdict out;
  if (c.empty()) {
    out.outcome = K2Verdict::Outcome::Zero;
    out.method = "empty";
    return out;
  }
  const RingPtr& ring = c.ring();
  const BaseField& F = ring->field;
  std::size_t n = ring->nvars();

  if (n == 0) {
    if (F.is_finite()) {
      out.outcome = K2Verdict::Outcome::Zero;
      out.method = "finite-field";
      return out;
    }
    std::vector<ConstSymbol> syms;
    for (const auto& t : c.terms()) syms.push_back({t.f.unit(), t.g.unit(), t.coef});
    tate_decide(syms, out);
    out.method = "tate";
    return out;
  }

  // Residues at every place supported by the entries.
  bool nontrivial = false;
  for (const auto& p : c.irreducibles()) {
    Level lv = make_graph_level(p);
    if (lv.kind == Level::Kind::Opaque) continue;
    Valuation v = Valuation::from_levels(ring, {lv});
    Residue r = tame_symbol(v, c);
    if (!r.is_one()) nontrivial = true;
    if (!r.is_one() || n == 1) out.residues[v.descriptor()] = r.to_string();
  }
  if (nontrivial) {
    out.outcome = K2Verdict::Outcome::NonZero;
    out.method = "residue";
    for (auto it = out.residues.begin(); it != out.residues.end();)
      it = it->second == "1" ? out.residues.erase(it) : std::next(it);
    return out;
  }

  if (n == 1) {
    if (F.is_finite()) {
      out.outcome = K2Verdict::Outcome::Zero;
      out.method = "residue";
      return out;
    }
    // Specialize at the smallest t = a avoiding all zeros and poles.
    auto irr = c.irreducibles();
    long a = 0;
    for (;; ++a) {
      bool ok = true;
      for (const auto& p : irr)
        if (sgn(p.evaluate({Scalar(a)})) == 0) ok = false;
      if (ok) break;
    }
    std::vector<ConstSymbol> syms;
    for (const auto& t : c.terms())
      syms.push_back({t.f.specialize_unit({Scalar(a)}), t.g.specialize_unit({Scalar(a)}), t.coef});
    out.specialization = ring->vars[0] + "=" + std::to_string(a);
    tate_decide(syms, out);
    out.method = "residue+tate";
    return out;
  }

  // Several variables: wedge certificates over composite valuations of
  // variables, then Steinberg rewriting.
  for (const auto& perm : permutations(n)) {
    std::vector<RatFunc> seq;
    for (auto i : perm) seq.push_back(RatFunc::variable(ring, i));
    Valuation v = Valuation::composite(ring, seq);
    std::size_t r = v.rank();
    linalg::QMatrix form(r, linalg::QVector(r, 0));
    for (const auto& t : c.terms()) {
      auto a = v.value(t.f), b = v.value(t.g);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) form[i][j] += t.coef * (a[i] * b[j] - b[i] * a[j]);
    }
    bool nz = false;
    for (auto& row : form)
      for (auto& x : row)
        if (sgn(x) != 0) nz = true;
    if (nz) {
      out.outcome = K2Verdict::Outcome::NonZero;
      out.method = "wedge";
      out.wedge_valuation = v.descriptor();
      return out;
    }
  }
  auto st = steinberg_reduce(c, steinberg_budget);
  if (st.zero) {
    out.outcome = K2Verdict::Outcome::Zero;
    out.method = "steinberg";
    return out;
  }
  out.outcome = K2Verdict::Outcome::Unknown;
  out.method = "exhausted";
  if (st.budget_exceeded) out.notes.push_back("steinberg budget exceeded");
  return out;
}

std::string ModUnitsWedge::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (i) s += "^";
    s += "(";
    for (std::size_t j = 0; j < vectors[i].size(); ++j) s += (j ? "," : "") + vectors[i][j].get_str();
    s += ")";
  }
  return s;
}

ModUnitsWedge wedge_mod_units(const Valuation& v, const std::vector<RatFunc>& elems) {
  ModUnitsWedge w;
  w.degree = elems.size();
  w.valuation = v.descriptor();
  std::size_t r = v.rank();
  for (const auto& e : elems) {
    auto val = v.value(e);
    w.vectors.emplace_back(val.begin(), val.end());
  }
  w.value_rank = linalg::rank(w.vectors, r);
  std::size_t n = elems.size();
  if (n <= r) {
    std::vector<bool> pick(r, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(n), true);
    do {
      std::vector<std::size_t> cols;
      for (std::size_t j = 0; j < r; ++j)
        if (pick[j]) cols.push_back(j);
      linalg::QMatrix m(n, linalg::QVector(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m[i][k] = w.vectors[i][cols[k]];
      w.minors.emplace_back(cols, linalg::determinant(m));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  w.zero = w.value_rank < n;
  return w;
}

}  // namespace milnork
