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

#include "milnork/dual.hpp"

#include <algorithm>
#include <set>

#include "milnork/errors.hpp"
#include "milnork/kernels.hpp"
#include "milnork/symbols.hpp"

namespace milnork {

namespace {

bool comparable(const Valuation& a, const Valuation& b) {
  return a.is_coarsening_of(b) || b.is_coarsening_of(a);
}

RatFunc irreducible(const RingPtr& ring, const Poly& p) { return RatFunc::from_factors(ring, 1, {{p, 1}}); }

std::string q_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

// ---- SubgroupSpec ----

bool SubgroupSpec::contains(const RatFunc& x) const {
  switch (kind) {
    case Kind::Trivial:
      return x.is_one();
    case Kind::Constants:
      return x.is_constant();
    case Kind::UnitsOf: {
      auto val = v.value(x);
      return std::all_of(val.begin(), val.end(), [](long e) { return e == 0; });
    }
    case Kind::PrincipalUnitsOf: {
      auto val = v.value(x);
      if (!std::all_of(val.begin(), val.end(), [](long e) { return e == 0; })) return false;
      return v.residue(x).is_one();
    }
  }
  return false;
}

std::string SubgroupSpec::to_string() const {
  switch (kind) {
    case Kind::Trivial:
      return "trivial";
    case Kind::Constants:
      return "constants";
    case Kind::UnitsOf:
      return "units(" + v.descriptor() + ")";
    case Kind::PrincipalUnitsOf:
      return "principal-units(" + v.descriptor() + ")";
  }
  return "";
}

// ---- KVector ----

void KVector::add(const Poly& p, const mpq_class& e) {
  for (auto it = support_.begin(); it != support_.end(); ++it) {
    if (it->first == p) {
      it->second += e;
      if (sgn(it->second) == 0) support_.erase(it);
      return;
    }
  }
  if (sgn(e) == 0) return;
  support_.emplace_back(p, e);
  std::sort(support_.begin(), support_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

KVector KVector::of(const RatFunc& x, SubgroupSpec modulus) {
  KVector k;
  k.ring_ = x.ring();
  k.modulus_ = std::move(modulus);
  for (const auto& [p, e] : x.factors()) k.add(p, e);
  // Constants are torsion over a finite field; the sign is torsion over Q.
  if (x.field().is_rational() && k.modulus_.kind != SubgroupSpec::Kind::Constants) {
    for (auto& [p, e] : factor_integer(x.unit().get_num())) k.constants_[p] += e;
    for (auto& [p, e] : factor_integer(x.unit().get_den())) k.constants_[p] -= e;
  }
  return k;
}

KVector KVector::operator+(const KVector& o) const {
  if (modulus_.to_string() != o.modulus_.to_string())
    fail(ErrorKind::ModulusMismatch, "adding vectors modulo " + modulus_.to_string() + " and " + o.modulus_.to_string());
  KVector r = *this;
  if (!r.ring_) r.ring_ = o.ring_;
  for (const auto& [p, e] : o.support_) r.add(p, e);
  for (const auto& [p, e] : o.constants_) {
    r.constants_[p] += e;
    if (sgn(r.constants_[p]) == 0) r.constants_.erase(p);
  }
  return r;
}

KVector KVector::scaled(const mpq_class& c) const {
  KVector r;
  r.ring_ = ring_;
  r.modulus_ = modulus_;
  if (sgn(c) == 0) return r;
  for (const auto& [p, e] : support_) r.support_.emplace_back(p, e * c);
  for (const auto& [p, e] : constants_) r.constants_[p] = e * c;
  return r;
}

std::string KVector::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  auto put = [&](const std::string& base, const mpq_class& e) {
    if (!s.empty()) s += " + ";
    s += (e == 1 ? "" : q_str(e) + "*") + "[" + base + "]";
  };
  for (const auto& [p, e] : constants_) put(p.get_str(), e);
  for (const auto& [p, e] : support_) put(p.to_string(), e);
  return s;
}

// ---- Functional ----

Functional Functional::coordinate(const Valuation& v, std::size_t i) {
  if (i >= v.rank()) fail(ErrorKind::InvalidArgument, "coordinate index beyond the rank");
  std::vector<mpq_class> row(v.rank(), 0);
  row[i] = 1;
  return from_row(v, std::move(row));
}

Functional Functional::from_row(const Valuation& v, std::vector<mpq_class> row) {
  if (row.size() != v.rank()) fail(ErrorKind::InvalidArgument, "row length differs from the rank");
  Functional f(v.ring());
  f.atoms_.push_back({v, std::move(row), 1});
  return f;
}

mpq_class Functional::operator()(const RatFunc& x) const {
  mpq_class s = 0;
  for (const auto& a : atoms_) {
    auto val = a.v.value(x);
    mpq_class t = 0;
    for (std::size_t i = 0; i < val.size(); ++i)
      if (val[i] != 0) t += a.row[i] * val[i];
    s += a.coef * t;
  }
  return s;
}

Functional Functional::operator+(const Functional& o) const {
  Functional r = *this;
  if (!r.ring_) {
    r.ring_ = o.ring_;
    r.modulus_ = o.modulus_;
  }
  r.atoms_.insert(r.atoms_.end(), o.atoms_.begin(), o.atoms_.end());
  return r;
}

Functional Functional::scaled(const mpq_class& c) const {
  Functional r = *this;
  if (sgn(c) == 0) r.atoms_.clear();
  for (auto& a : r.atoms_) a.coef *= c;
  return r;
}

std::map<std::string, Functional::Coord> Functional::canonical() const {
  std::map<std::string, Coord> out;
  for (const auto& a : atoms_) {
    std::size_t r = a.v.rank();
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(a.row[i]) == 0) continue;
      Valuation pre = a.v.coarsen(r - i - 1);
      std::string key = pre.descriptor();
      auto it = out.find(key);
      if (it == out.end()) it = out.emplace(key, Coord{pre, 0}).first;
      it->second.coef += a.coef * a.row[i];
    }
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second.coef) == 0 ? out.erase(it) : std::next(it);
  return out;
}

bool Functional::respects_modulus() const {
  switch (modulus_.kind) {
    case SubgroupSpec::Kind::Trivial:
      return true;
    case SubgroupSpec::Kind::Constants:
      // Only coordinates ending in a p-adic level see the constants.
      for (const auto& [k, c] : canonical())
        if (c.prefix.levels().back().kind == Level::Kind::Prime) return false;
      return true;
    case SubgroupSpec::Kind::UnitsOf:
      return in_inertia(*this, modulus_.v);
    case SubgroupSpec::Kind::PrincipalUnitsOf:
      return in_decomposition(*this, modulus_.v);
  }
  return false;
}

std::string Functional::to_string() const {
  auto c = canonical();
  if (c.empty()) return "0";
  std::string s;
  for (const auto& [k, co] : c) {
    if (!s.empty()) s += " + ";
    s += (co.coef == 1 ? "" : q_str(co.coef) + "*") + "v<" + k + ">";
  }
  return s;
}

bool in_inertia(const Functional& f, const Valuation& v) {
  for (const auto& [k, c] : f.canonical())
    if (!c.prefix.is_coarsening_of(v)) return false;
  return true;
}

bool in_decomposition(const Functional& f, const Valuation& v) {
  for (const auto& [k, c] : f.canonical())
    if (!comparable(c.prefix, v)) return false;
  return true;
}

mpq_class pair(const KVector& x, const Functional& f) {
  const SubgroupSpec& m = x.modulus();
  bool ok = true;
  switch (m.kind) {
    case SubgroupSpec::Kind::Trivial:
      break;
    case SubgroupSpec::Kind::Constants: {
      for (const auto& [k, c] : f.canonical())
        if (c.prefix.levels().back().kind == Level::Kind::Prime) ok = false;
      break;
    }
    case SubgroupSpec::Kind::UnitsOf:
      ok = in_inertia(f, m.v);
      break;
    case SubgroupSpec::Kind::PrincipalUnitsOf:
      ok = in_decomposition(f, m.v);
      break;
  }
  if (!ok) fail(ErrorKind::ModulusMismatch, "functional does not vanish on " + m.to_string());
  mpq_class s = 0;
  for (const auto& [p, e] : x.support()) s += e * f(irreducible(x.ring(), p));
  for (const auto& [p, e] : x.constant_part()) s += e * f(RatFunc::constant(x.ring(), mpq_class(p)));
  return s;
}

// ---- FunctionalSpace ----

namespace {

// Coordinates of functionals over the union of their canonical keys.
linalg::QMatrix coordinate_rows(const std::vector<Functional>& fs, std::vector<std::string>* keys_out = nullptr) {
  std::vector<std::map<std::string, Functional::Coord>> cs;
  std::set<std::string> keys;
  for (const auto& f : fs) {
    cs.push_back(f.canonical());
    for (const auto& [k, c] : cs.back()) keys.insert(k);
  }
  std::vector<std::string> kv(keys.begin(), keys.end());
  linalg::QMatrix rows;
  for (const auto& c : cs) {
    linalg::QVector r(kv.size(), 0);
    for (std::size_t j = 0; j < kv.size(); ++j) {
      auto it = c.find(kv[j]);
      if (it != c.end()) r[j] = it->second.coef;
    }
    rows.push_back(std::move(r));
  }
  if (keys_out) *keys_out = kv;
  return rows;
}

}  // namespace

FunctionalSpace FunctionalSpace::span(RingPtr ring, const std::vector<Functional>& gens, std::string family) {
  FunctionalSpace s;
  s.ring_ = std::move(ring);
  s.family_ = std::move(family);
  std::vector<std::string> keys;
  auto rows = coordinate_rows(gens, &keys);
  linalg::QMatrix kept;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    kept.push_back(rows[i]);
    if (linalg::rank(kept, keys.size()) < kept.size()) {
      kept.pop_back();
      continue;
    }
    s.basis_.push_back(gens[i]);
  }
  return s;
}

bool FunctionalSpace::contains(const Functional& f) const {
  std::vector<Functional> all = basis_;
  all.push_back(f);
  std::vector<std::string> keys;
  auto rows = coordinate_rows(all, &keys);
  return linalg::rank(rows, keys.size()) == basis_.size();
}

Functional FunctionalSpace::combine(const std::vector<mpq_class>& c) const {
  Functional f(ring_);
  for (std::size_t i = 0; i < basis_.size() && i < c.size(); ++i)
    if (sgn(c[i]) != 0) f = f + basis_[i].scaled(c[i]);
  return f;
}

// ---- the alternating relation ----

mpq_class defect(const Functional& f, const Functional& g, const RatFunc& x, const RatFunc& y) {
  return f(x) * g(y) - f(y) * g(x);
}

std::vector<RatFunc> witness_pool(const RingPtr& ring, const std::vector<Functional>& fs, std::size_t size) {
  std::vector<RatFunc> base;
  auto add_base = [&](const RatFunc& b) {
    if (b.is_constant()) return;
    if (std::find(base.begin(), base.end(), b) == base.end()) base.push_back(b);
  };
  for (const auto& f : fs)
    for (const auto& [k, c] : f.canonical()) {
      const auto& lv = c.prefix.levels();
      if (lv.front().kind != Level::Kind::Prime && lv.front().kind != Level::Kind::Monomial)
        add_base(RatFunc::from_poly(lv.front().pi));
      for (std::size_t i = 0; i < lv.size(); ++i) {
        try {
          add_base(c.prefix.uniformizer(i));
        } catch (const Error&) {
        }
      }
    }
  for (std::size_t i = 0; i < ring->nvars(); ++i) add_base(RatFunc::variable(ring, i));

  std::vector<Scalar> consts;
  for (long v : {-1, 2, -2, 3}) {
    Scalar s = ring->field.from_int(v);
    if (!ring->field.is_zero(s) && s != 1 && std::find(consts.begin(), consts.end(), s) == consts.end())
      consts.push_back(s);
  }
  if (ring->field.is_rational()) consts.push_back(mpq_class(1, 2));

  std::vector<RatFunc> out;
  auto push = [&](const RatFunc& x) {
    if (out.size() >= size || x.is_one()) return;
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  };
  for (const auto& b : base) push(b);
  for (const auto& b : base) push(b.inverse());
  for (const auto& c : consts)
    for (const auto& b : base) push(b * RatFunc::constant(ring, c));
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = 0; j < base.size(); ++j)
      if (i != j) {
        push(base[i] * base[j]);
        push(base[i] / base[j]);
      }
  for (const auto& b : base) {
    push(b.pow(2));
    push(b.pow(-2));
    try {
      push(b + RatFunc::constant(ring, 1));
    } catch (const Error&) {
    }
  }
  for (std::size_t i = 0; i < base.size(); ++i)
    for (std::size_t j = i + 1; j < base.size(); ++j) {
      try {
        push(base[i] + base[j]);
        push(base[i] - base[j]);
      } catch (const Error&) {
      }
    }
  for (const auto& c : consts) push(RatFunc::constant(ring, c));
  return out;
}

namespace {

// Longest chain among the coordinate prefixes, when all lie on one chain.
std::optional<Valuation> common_chain(const std::vector<const Functional*>& fs) {
  std::vector<Valuation> vs;
  for (const auto* f : fs)
    for (const auto& [k, c] : f->canonical()) vs.push_back(c.prefix);
  if (vs.empty()) return std::nullopt;
  const Valuation* top = &vs[0];
  for (const auto& v : vs)
    if (v.rank() > top->rank()) top = &v;
  for (const auto& v : vs)
    if (!v.is_coarsening_of(*top)) return std::nullopt;
  return *top;
}

bool proportional(const Functional& f, const Functional& g) {
  auto a = f.canonical(), b = g.canonical();
  if (a.empty() || b.empty()) return true;
  if (a.size() != b.size()) return false;
  mpq_class ratio;
  bool first = true;
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    if (it == b.end()) return false;
    mpq_class r = it->second.coef / c.coef;
    if (first) ratio = r, first = false;
    else if (r != ratio) return false;
  }
  return true;
}

}  // namespace

AlternatingVerdict decide_alternating(const Functional& f, const Functional& g, const WitnessPolicy& policy) {
  AlternatingVerdict out;
  if (proportional(f, g)) {
    out.outcome = AlternatingVerdict::Outcome::Holds;
    out.reason = "proportional";
    return out;
  }
  if (auto w = common_chain({&f, &g})) {
    // Both factor through one valuation w: for x + y = 1 either one side is a
    // principal unit of w, or w(x) = w(y). Applied level by level this is the
    // residue criterion down the chain.
    out.outcome = AlternatingVerdict::Outcome::Holds;
    out.reason = "common chain " + w->descriptor() + " (" + std::to_string(w->rank()) + " levels)";
    return out;
  }
  auto pool = witness_pool(f.ring() ? f.ring() : g.ring(), {f, g}, policy.pool);
  std::vector<RatFunc> xs, ys;
  for (const auto& x : pool) {
    try {
      RatFunc y = x.one_minus();
      xs.push_back(x);
      ys.push_back(y);
    } catch (const Error&) {
    }
  }
  std::size_t i = policy.parallel ? kernels::witness_scan_parallel(f, g, xs, ys)
                                  : kernels::witness_scan_serial(f, g, xs, ys);
  out.witnesses_tried = std::min(i + 1, xs.size());
  if (i < xs.size()) {
    out.outcome = AlternatingVerdict::Outcome::Fails;
    out.x = xs[i];
    out.y = ys[i];
    out.defect = defect(f, g, xs[i], ys[i]);
    out.reason = "witness";
    return out;
  }
  out.outcome = AlternatingVerdict::Outcome::Unknown;
  out.reason = "witness pool exhausted";
  return out;
}

namespace {

std::string pair_name(const Functional& a, const Functional& b) { return "(" + a.to_string() + ", " + b.to_string() + ")"; }

// {a in span(ambient) : R(a, s) for all s in space}, plus the number of
// witnesses used.
FunctionalSpace centralizer_in(const FunctionalSpace& space, const FunctionalSpace& ambient, const WitnessPolicy& policy,
                               std::size_t& nwit) {
  const auto& A = ambient.basis();
  const auto& S = space.basis();
  std::vector<std::pair<RatFunc, RatFunc>> wit;
  for (const auto& a : A)
    for (const auto& s : S) {
      auto d = decide_alternating(a, s, policy);
      if (d.outcome == AlternatingVerdict::Outcome::Unknown)
        fail(ErrorKind::UndecidedPair, "undecided pair " + pair_name(a, s));
      if (d.outcome == AlternatingVerdict::Outcome::Fails) wit.emplace_back(d.x, d.y);
    }
  for (;;) {
    linalg::QMatrix cons;
    for (const auto& [x, y] : wit)
      for (const auto& s : S) {
        linalg::QVector row(A.size());
        for (std::size_t i = 0; i < A.size(); ++i) row[i] = defect(A[i], s, x, y);
        cons.push_back(std::move(row));
      }
    linalg::QMatrix ker;
    if (cons.empty()) {
      for (std::size_t i = 0; i < A.size(); ++i) {
        linalg::QVector e(A.size(), 0);
        e[i] = 1;
        ker.push_back(std::move(e));
      }
    } else {
      ker = linalg::kernel(cons, A.size());
    }
    bool again = false;
    std::vector<Functional> gens;
    for (const auto& k : ker) {
      Functional f = ambient.combine(k);
      for (const auto& s : S) {
        auto d = decide_alternating(f, s, policy);
        if (d.outcome == AlternatingVerdict::Outcome::Unknown)
          fail(ErrorKind::UndecidedPair, "undecided pair " + pair_name(f, s));
        if (d.outcome == AlternatingVerdict::Outcome::Fails) {
          wit.emplace_back(d.x, d.y);
          again = true;
          break;
        }
      }
      if (again) break;
      gens.push_back(f);
    }
    if (!again) {
      nwit = wit.size();
      return FunctionalSpace::span(ambient.ring(), gens, ambient.family());
    }
  }
}

}  // namespace

CenterCentralizer center_and_centralizer(const FunctionalSpace& space, const FunctionalSpace& ambient,
                                         const WitnessPolicy& policy) {
  CenterCentralizer out;
  std::size_t w1 = 0, w2 = 0;
  out.centralizer = centralizer_in(space, ambient, policy, w1);
  out.center = centralizer_in(space, space, policy, w2);
  out.witnesses = w1 + w2;
  return out;
}

// ---- minimal valuation ----

Valuation minimal_valuation(const FunctionalSpace& I) {
  std::vector<const Functional*> fs;
  for (const auto& f : I.basis()) fs.push_back(&f);
  auto w = common_chain(fs);
  if (!w) {
    for (const auto& f : I.basis())
      if (!f.canonical().empty()) fail(ErrorKind::NotValuative, "coordinates do not lie on one valuation chain");
    return Valuation::trivial(I.ring());
  }
  // Deepest coordinate used by some form; everything below it is a convex
  // subgroup of v(I^perp) and gets coarsened away.
  std::size_t deepest = 0;
  for (const auto& f : I.basis())
    for (const auto& [k, c] : f.canonical()) deepest = std::max(deepest, c.prefix.rank());
  return w->coarsen(w->rank() - deepest);
}

// ---- visibility ----

namespace {

// Subspace of span(ambient) lying in D_v (or I_v when inertia).
FunctionalSpace restrict_to(const FunctionalSpace& ambient, const Valuation& v, bool inertia) {
  std::vector<std::string> keys;
  auto rows = coordinate_rows(ambient.basis(), &keys);
  std::vector<std::size_t> bad;
  for (std::size_t j = 0; j < keys.size(); ++j) {
    Valuation pre;
    for (const auto& f : ambient.basis()) {
      auto c = f.canonical();
      auto it = c.find(keys[j]);
      if (it != c.end()) {
        pre = it->second.prefix;
        break;
      }
    }
    bool ok = inertia ? pre.is_coarsening_of(v) : comparable(pre, v);
    if (!ok) bad.push_back(j);
  }
  std::size_t n = ambient.dim();
  linalg::QMatrix cons;
  for (auto j : bad) {
    linalg::QVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = rows[i][j];
    cons.push_back(std::move(r));
  }
  std::vector<Functional> gens;
  if (cons.empty()) {
    gens = ambient.basis();
  } else {
    for (const auto& k : linalg::kernel(cons, n)) gens.push_back(ambient.combine(k));
  }
  return FunctionalSpace::span(ambient.ring(), gens, ambient.family());
}

}  // namespace

VisibilityVerdict visibility_check(const Valuation& v, const SubgroupSpec& T, const FunctionalSpace& ambient) {
  VisibilityVerdict out;
  if (v.is_trivial()) {
    out.reason = "trivial valuation";
    return out;
  }
  std::size_t r = v.rank();
  out.trace.push_back("valuation " + v.descriptor() + " of rank " + std::to_string(r));
  if (T.kind == SubgroupSpec::Kind::UnitsOf || T.kind == SubgroupSpec::Kind::PrincipalUnitsOf) {
    out.reason = "T is not contained in the constants";
    return out;
  }
  // Value group of the constants: only p-adic levels see them.
  linalg::QMatrix vk;
  for (const auto& lv : v.levels())
    if (lv.kind == Level::Kind::Prime) {
      auto val = v.value(RatFunc::constant(v.ring(), mpq_class(lv.p)));
      vk.emplace_back(val.begin(), val.end());
    }
  if (vk.empty()) {
    out.trace.push_back("vk = 0");
  } else {
    std::size_t rk = linalg::rank(vk, r);
    linalg::QMatrix ext = vk;
    linalg::QVector last(r, 0);
    last[r - 1] = 1;
    ext.push_back(last);
    if (linalg::rank(ext, r) == rk) {
      out.reason = "saturation of vk contains a nontrivial convex subgroup";
      return out;
    }
    out.trace.push_back("saturation of vk has rank " + std::to_string(rk) + " and no nontrivial convex subgroup");
  }
  std::size_t td = v.residue_trdeg();
  out.trace.push_back("trdeg(Kv|kv) = " + std::to_string(td));
  if (td < 1) {
    out.reason = "trdeg(Kv|kv) = 0";
    return out;
  }
  out.visible = true;
  out.reason = "trdeg(Kv|kv) >= 1 and the saturation of vk has no nontrivial convex subgroup";
  // Conditions on the ambient family, reported only.
  if (ambient.dim() > 0) {
    try {
      FunctionalSpace D = restrict_to(ambient, v, false), I = restrict_to(ambient, v, true);
      out.trace.push_back("ambient: dim D_v = " + std::to_string(D.dim()) + ", dim I_v = " + std::to_string(I.dim()));
      auto cc = center_and_centralizer(D, D);
      bool inside = true;
      for (const auto& f : I.basis())
        if (!cc.center.contains(f)) inside = false;
      out.trace.push_back(std::string("ambient: I_v inside center of D_v: ") + (inside ? "yes" : "no") +
                          ", dim center = " + std::to_string(cc.center.dim()));
    } catch (const Error& e) {
      out.trace.push_back(std::string("ambient check skipped: ") + e.what());
    }
  }
  return out;
}

// ---- witness search ----

WitnessingValuation find_witnessing_valuation(const FunctionalSpace& D, const std::vector<Valuation>& pool,
                                              const WitnessPolicy& policy) {
  const auto& B = D.basis();
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = i + 1; j < B.size(); ++j) {
      auto d = decide_alternating(B[i], B[j], policy);
      if (d.outcome == AlternatingVerdict::Outcome::Fails)
        fail(ErrorKind::NotAlternating,
             "pair " + pair_name(B[i], B[j]) + " fails at x = " + d.x.to_string() + ", y = " + d.y.to_string());
      if (d.outcome == AlternatingVerdict::Outcome::Unknown)
        fail(ErrorKind::UndecidedPair, "undecided pair " + pair_name(B[i], B[j]));
    }
  // Pool closed under coarsening, given order first.
  std::vector<Valuation> cands;
  auto add = [&](const Valuation& v) {
    if (v.is_trivial()) return;
    if (std::find(cands.begin(), cands.end(), v) == cands.end()) cands.push_back(v);
  };
  for (const auto& v : pool) add(v);
  for (const auto& v : pool)
    for (std::size_t d = 1; d < v.rank(); ++d) add(v.coarsen(d));

  for (const auto& v : cands) {
    if (!std::all_of(B.begin(), B.end(), [&](const Functional& f) { return in_decomposition(f, v); })) continue;
    // Probe: the basis must vanish on some principal units of v.
    bool probe_ok = true;
    for (std::size_t lvl = 0; lvl < v.rank() && probe_ok; ++lvl) {
      try {
        RatFunc u = v.uniformizer(0).pow(static_cast<long>(lvl) + 1) + RatFunc::constant(D.ring(), 1);
        for (const auto& f : B)
          if (sgn(f(u)) != 0) probe_ok = false;
      } catch (const Error&) {
      }
    }
    if (!probe_ok) continue;
    FunctionalSpace I = restrict_to(D, v, true);
    std::size_t codim = D.dim() - I.dim();
    if (codim <= 1) return {v, I, codim};
  }
  fail(ErrorKind::NoWitnessInPool, "no pool valuation witnesses the space");
}

// ---- saturation of v(I^perp) ----

SaturationCheck v_perp_saturation(const Valuation& v, const FunctionalSpace& H, const std::vector<RatFunc>& probes) {
  SaturationCheck out;
  std::size_t r = v.rank();
  // Direct: kernel in Q (x) vK of the rows of I_v cap H.
  FunctionalSpace I = restrict_to(H, v, true);
  linalg::QMatrix rows;
  for (const auto& f : I.basis()) {
    linalg::QVector row(r, 0);
    for (const auto& [k, c] : f.canonical()) row[c.prefix.rank() - 1] += c.coef;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    for (std::size_t i = 0; i < r; ++i) {
      linalg::QVector e(r, 0);
      e[i] = 1;
      out.direct.push_back(std::move(e));
    }
  } else {
    out.direct = linalg::kernel(rows, r);
  }
  // Sampled: integer exponent vectors over the probes killed by H.
  std::size_t n = probes.size();
  linalg::ZMatrix m;
  for (const auto& h : H.basis()) {
    linalg::QVector q(n);
    for (std::size_t j = 0; j < n; ++j) q[j] = h(probes[j]);
    bool nz = std::any_of(q.begin(), q.end(), [](const mpq_class& x) { return sgn(x) != 0; });
    if (nz) m.push_back(linalg::primitive_integer(q));
  }
  linalg::ZMatrix ker;
  if (m.empty()) {
    for (std::size_t j = 0; j < n; ++j) {
      linalg::ZVector e(n, 0);
      e[j] = 1;
      ker.push_back(std::move(e));
    }
  } else {
    ker = linalg::integer_kernel(m, n);
  }
  std::vector<ValueVec> pv;
  for (const auto& p : probes) pv.push_back(v.value(p));
  linalg::QMatrix vals;
  for (const auto& k : ker) {
    linalg::QVector val(r, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < r; ++i) val[i] += mpq_class(k[j]) * pv[j][i];
    vals.push_back(std::move(val));
  }
  if (!vals.empty()) {
    linalg::rref(vals, r);
    for (auto& row : vals)
      if (std::any_of(row.begin(), row.end(), [](const mpq_class& x) { return sgn(x) != 0; }))
        out.sampled.push_back(row);
  }
  std::size_t a = linalg::rank(out.direct, r), b = linalg::rank(out.sampled, r);
  linalg::QMatrix both = out.direct;
  both.insert(both.end(), out.sampled.begin(), out.sampled.end());
  out.agree = a == b && linalg::rank(both, r) == a;
  return out;
}

// ---- functionals outside D_v ----

std::optional<OutsideDecomposition> functional_outside_decomposition(const Valuation& v) {
  if (v.is_trivial()) return std::nullopt;
  const RingPtr& ring = v.ring();
  RatFunc pi = v.uniformizer(0);
  for (long k = 1; k <= 3; ++k) {
    for (long c : {1, 2, -1}) {
      Scalar cs = ring->field.from_int(c);
      if (ring->field.is_zero(cs)) continue;
      RatFunc u;
      try {
        u = pi.pow(k) * RatFunc::constant(ring, cs) + RatFunc::constant(ring, 1);
      } catch (const Error&) {
        continue;
      }
      if (u.is_constant() || !SubgroupSpec::principal_units_of(v).contains(u)) continue;
      for (const auto& [p, e] : u.factors()) {
        Functional f = Functional::coordinate(Valuation::pi_adic(p));
        if (f.respects_modulus() && sgn(f(u)) != 0) return OutsideDecomposition{f, u};
      }
    }
  }
  return std::nullopt;
}

}  // namespace milnork
