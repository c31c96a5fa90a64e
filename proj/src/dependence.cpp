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

#include "milnork/dependence.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "milnork/errors.hpp"
#include "milnork/kernels.hpp"

namespace milnork {

namespace {

// Sparse echelon basis of KVectors; coordinates are irreducibles by text
// and primes by value.
class SpanTracker {
 public:
  bool contains(const KVector& x) { return reduce(x).empty(); }
  // Adds x; false when x was already in the span.
  bool add(const KVector& x) {
    auto r = reduce(x);
    if (r.empty()) return false;
    std::size_t piv = r.begin()->first;
    mpq_class inv = 1 / r.begin()->second;
    for (auto& [c, e] : r) e *= inv;
    rows_.emplace_back(piv, std::move(r));
    return true;
  }

 private:
  using Row = std::map<std::size_t, mpq_class>;
  std::size_t col(const std::string& key) { return cols_.emplace(key, cols_.size()).first->second; }
  Row reduce(const KVector& x) {
    Row v;
    for (const auto& [p, e] : x.support()) v[col("I:" + p.to_string())] += e;
    for (const auto& [p, e] : x.constant_part()) v[col("P:" + p.get_str())] += e;
    for (const auto& [piv, row] : rows_) {
      auto it = v.find(piv);
      if (it == v.end()) continue;
      mpq_class f = it->second;
      for (const auto& [c, e] : row) {
        mpq_class& t = v[c];
        t -= f * e;
        if (sgn(t) == 0) v.erase(c);
      }
    }
    return v;
  }
  std::map<std::string, std::size_t> cols_;
  std::vector<std::pair<std::size_t, Row>> rows_;
};

bool in_span(const std::vector<KVector>& basis, const KVector& x) {
  SpanTracker t;
  for (const auto& b : basis) t.add(b);
  return t.contains(x);
}

std::vector<Scalar> closure_constants(const RingPtr& ring, const SubgroupSpec& T, const ClosureOptions& opts) {
  const BaseField& F = ring->field;
  std::vector<Scalar> raw = opts.constants;
  if (raw.empty())
    for (long v : {1, -1, 2, -2, 3, -3}) raw.push_back(v);
  if (opts.constants.empty()) raw.push_back(mpq_class(1, 2));
  std::vector<Scalar> out;
  for (const auto& c : raw) {
    Scalar s;
    try {
      s = F.from_rational(c);
    } catch (const Error&) {
      continue;
    }
    if (F.is_zero(s)) continue;
    // Over Q with T trivial, the saturation of T is {1, -1}.
    if (F.is_rational()) {
      bool ok = T.kind == SubgroupSpec::Kind::Constants || s == 1 || s == -1 ||
                T.contains(RatFunc::constant(ring, s));
      if (!ok) continue;
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

}  // namespace

std::string Derivation::to_string(const BaseField& F) const {
  switch (rule) {
    case Rule::Seed:
      return element.to_string() + " : seed";
    case Rule::AffineStep:
      return element.to_string() + " = " + F.to_string(a) + " + " + F.to_string(b) + "*(" + h.to_string() + ")";
    case Rule::K2Partner:
      return element.to_string() + " : {" + partner.to_string() + ", " + element.to_string() + "} = 0";
  }
  return "";
}

bool MilnorClosedApprox::contains(const KVector& x) const { return in_span(basis, x); }

MilnorClosedApprox milnor_closure(const RingPtr& ring, const std::vector<RatFunc>& seed, const SubgroupSpec& modulus,
                                  std::optional<std::vector<RatFunc>> pool, const ClosureOptions& opts) {
  MilnorClosedApprox M;
  M.ring = ring;
  M.modulus = modulus;
  M.budget = opts.rounds;
  SpanTracker span;
  auto admit = [&](Derivation d) {
    KVector k = KVector::of(d.element, modulus);
    if (!span.add(k)) return false;
    M.basis.push_back(k);
    M.members.push_back(std::move(d));
    return true;
  };
  for (const auto& s : seed) {
    M.seed.push_back(KVector::of(s, modulus));
    Derivation d;
    d.element = s;
    admit(d);
  }
  std::vector<RatFunc> pl;
  if (pool) {
    pl = *pool;
  } else {
    for (const auto& s : seed) {
      pl.push_back(s);
      for (const auto& [p, e] : s.factors()) pl.push_back(RatFunc::from_factors(ring, 1, {{p, 1}}));
    }
  }
  auto consts = closure_constants(ring, modulus, opts);

  for (std::size_t round = 1; round <= opts.rounds; ++round) {
    M.frontier.clear();
    // Elements of the current preimage used as h.
    std::vector<RatFunc> hs;
    auto add_h = [&](const RatFunc& h) {
      if (KVector::of(h, modulus).is_zero()) return;
      if (std::find(hs.begin(), hs.end(), h) == hs.end()) hs.push_back(h);
    };
    std::size_t nm = M.members.size();
    for (std::size_t i = 0; i < nm; ++i) {
      add_h(M.members[i].element);
      add_h(M.members[i].element.inverse());
    }
    for (std::size_t i = 0; i < nm; ++i)
      for (std::size_t j = i + 1; j < nm; ++j) {
        add_h(M.members[i].element * M.members[j].element);
        add_h(M.members[i].element / M.members[j].element);
        add_h(M.members[j].element / M.members[i].element);
      }
    struct Cand {
      Scalar a, b;
      std::size_t h;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < hs.size(); ++i)
      for (const auto& a : consts)
        for (const auto& b : consts) cands.push_back({a, b, i});
    if (cands.size() > opts.max_candidates) {
      cands.resize(opts.max_candidates);
      M.budget_exceeded = true;
    }
    std::vector<std::optional<RatFunc>> vals(cands.size());
    auto eval = [&](std::size_t i) {
      try {
        vals[i] = RatFunc::constant(ring, cands[i].a) + hs[cands[i].h] * RatFunc::constant(ring, cands[i].b);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroElement && e.kind() != ErrorKind::UnsupportedShape &&
            e.kind() != ErrorKind::DegreeCapExceeded)
          throw;
      }
    };
    if (opts.parallel) kernels::for_each_parallel(cands.size(), eval);
    else kernels::for_each_serial(cands.size(), eval);

    // K2 partners among the pool, against members at the start of the round.
    std::vector<long> partner(pl.size(), -1);
    std::vector<bool> pool_in_span(pl.size());
    for (std::size_t i = 0; i < pl.size(); ++i) pool_in_span[i] = span.contains(KVector::of(pl[i], modulus));
    auto test_pool = [&](std::size_t i) {
      if (pool_in_span[i]) return;
      for (std::size_t j = 0; j < nm; ++j) {
        try {
          auto v = k2_zero(K2Class::symbol(M.members[j].element, pl[i]), opts.k2_budget);
          if (v.outcome == K2Verdict::Outcome::Zero) {
            partner[i] = static_cast<long>(j);
            return;
          }
        } catch (const Error&) {
        }
      }
    };
    if (opts.parallel) kernels::for_each_parallel(pl.size(), test_pool);
    else kernels::for_each_serial(pl.size(), test_pool);

    // Round-synchronous merge in candidate order.
    for (std::size_t i = 0; i < cands.size(); ++i) {
      if (!vals[i]) continue;
      Derivation d;
      d.rule = Derivation::Rule::AffineStep;
      d.element = *vals[i];
      d.a = cands[i].a;
      d.b = cands[i].b;
      d.h = hs[cands[i].h];
      d.round = round;
      if (admit(d)) M.frontier.push_back(d.element);
    }
    for (std::size_t i = 0; i < pl.size(); ++i) {
      if (partner[i] < 0) continue;
      Derivation d;
      d.rule = Derivation::Rule::K2Partner;
      d.element = pl[i];
      d.partner = M.members[static_cast<std::size_t>(partner[i])].element;
      d.round = round;
      if (admit(d)) M.frontier.push_back(d.element);
    }
    M.rounds_used = round;
    if (M.frontier.empty()) break;
  }
  return M;
}

// ---- dependence ----

std::vector<std::string> element_names(const RingPtr& ring, std::size_t n) {
  std::vector<std::string> out;
  std::set<std::string> used(ring->vars.begin(), ring->vars.end());
  for (char c = 'a'; out.size() < n && c <= 'z'; ++c) {
    std::string s(1, c);
    if (!used.count(s)) out.push_back(s);
  }
  for (std::size_t i = 0; out.size() < n; ++i) {
    std::string s = "e" + std::to_string(i);
    if (!used.count(s)) out.push_back(s);
  }
  return out;
}

bool relation_vanishes(const Poly& rel, const std::vector<RatFunc>& elems) {
  if (elems.empty()) return rel.is_zero();
  const RingPtr& ring = elems[0].ring();
  std::vector<Poly> num, den;
  for (const auto& e : elems) {
    num.push_back(e.numerator());
    den.push_back(e.denominator());
  }
  std::size_t n = elems.size();
  std::vector<int> deg(n);
  for (std::size_t i = 0; i < n; ++i) deg[i] = rel.degree_in(i);
  Poly acc = Poly::constant(ring, 0);
  for (const auto& t : rel.terms()) {
    Poly m = Poly::constant(ring, t.coef);
    for (std::size_t i = 0; i < n; ++i) m = m * num[i].pow(t.exps[i]) * den[i].pow(deg[i] - t.exps[i]);
    acc = acc + m;
  }
  return acc.is_zero();
}

namespace {

std::optional<std::pair<Valuation, ModUnitsWedge>> independence_certificate(const std::vector<RatFunc>& elems) {
  const RingPtr& ring = elems[0].ring();
  std::size_t n = elems.size(), nv = ring->nvars();
  if (n > nv) return std::nullopt;
  auto try_v = [&](const Valuation& v) -> std::optional<ModUnitsWedge> {
    auto w = wedge_mod_units(v, elems);
    if (!w.zero) return w;
    return std::nullopt;
  };
  // The regular sequence of the elements themselves.
  try {
    Valuation v = Valuation::composite(ring, elems);
    if (auto w = try_v(v)) return std::make_pair(v, *w);
  } catch (const Error&) {
  }
  // Chains built greedily from simple candidates; each level must raise
  // the rank of the value matrix.
  std::vector<RatFunc> cands;
  auto add = [&](const RatFunc& c) {
    if (c.is_constant()) return;
    if (std::find(cands.begin(), cands.end(), c) == cands.end()) cands.push_back(c);
  };
  for (std::size_t i = 0; i < nv; ++i) add(RatFunc::variable(ring, i));
  for (const auto& e : elems)
    for (const auto& [p, m] : e.factors()) add(RatFunc::from_factors(ring, 1, {{p, 1}}));
  for (std::size_t i = 0; i < nv; ++i)
    for (long c : {1, -1}) add(RatFunc::variable(ring, i) + RatFunc::constant(ring, c));

  // Irreducible factors of the residues of unit elements, read back in K
  // when the residue ring keeps the original variable names.
  auto residue_cands = [&](const Valuation& v) {
    std::vector<RatFunc> out;
    const RingPtr rr = v.residue_ring();
    if (!rr) return out;
    std::vector<std::size_t> var_map(rr->nvars(), 0);
    std::vector<bool> known(rr->nvars(), false);
    for (std::size_t i = 0; i < rr->nvars(); ++i) {
      int j = ring->index_of(rr->vars[i]);
      if (j >= 0) var_map[i] = static_cast<std::size_t>(j), known[i] = true;
    }
    for (const auto& e : elems) {
      ValueVec val = v.value(e);
      if (std::any_of(val.begin(), val.end(), [](long x) { return x != 0; })) continue;
      Residue res = v.residue(e);
      if (res.kind != Residue::Kind::Function) continue;
      for (const auto& [p, m] : res.func.factors()) {
        auto sup = p.support();
        bool ok = true;
        for (std::size_t i = 0; i < sup.size(); ++i) ok = ok && (!sup[i] || known[i]);
        if (!ok) continue;
        RatFunc c = RatFunc::normalize(p.mapped(ring, var_map), Poly::constant(ring, 1));
        if (!c.is_constant() && std::find(out.begin(), out.end(), c) == out.end() &&
            std::find(cands.begin(), cands.end(), c) == cands.end())
          out.push_back(c);
      }
    }
    return out;
  };

  long attempts = 0;
  std::optional<std::pair<Valuation, ModUnitsWedge>> found;
  std::vector<RatFunc> seq;
  std::function<void(std::size_t)> dfs = [&](std::size_t rank) {
    if (found || attempts > 4000 || seq.size() >= nv) return;
    std::vector<RatFunc> local;
    if (!seq.empty()) {
      try {
        local = residue_cands(Valuation::composite(ring, seq));
      } catch (const Error&) {
      }
    }
    // Residue factors first: they are the ones that separate the remaining units.
    local.insert(local.end(), cands.begin(), cands.end());
    for (const auto& c : local) {
      if (found) return;
      if (std::find(seq.begin(), seq.end(), c) != seq.end()) continue;
      ++attempts;
      seq.push_back(c);
      try {
        Valuation v = Valuation::composite(ring, seq);
        auto w = wedge_mod_units(v, elems);
        if (!w.zero) {
          found = std::make_pair(v, w);
        } else if (w.value_rank > rank) {
          dfs(w.value_rank);
        }
      } catch (const Error&) {
      }
      seq.pop_back();
    }
  };
  dfs(0);
  return found;
}

}  // namespace

DependenceVerdict dependence_decide(const std::vector<RatFunc>& elems, const EliminationOptions& opts) {
  if (elems.empty()) fail(ErrorKind::InvalidArgument, "no elements");
  const RingPtr& ring = elems[0].ring();
  DependenceVerdict out;
  auto names = element_names(ring, elems.size());
  out.relation_ring = make_ring(ring->field, names);
  std::size_t n = elems.size(), nv = ring->nvars();

  for (std::size_t i = 0; i < n; ++i) {
    if (!elems[i].is_constant()) continue;
    out.outcome = DependenceVerdict::Outcome::Dependent;
    out.relation = Poly::variable(out.relation_ring, i) - Poly::constant(out.relation_ring, elems[i].unit());
    out.relation_text = relation_to_string(out.relation);
    return out;
  }
  if (auto cert = independence_certificate(elems)) {
    out.outcome = DependenceVerdict::Outcome::Independent;
    out.valuation = cert->first;
    out.wedge = cert->second;
    return out;
  }
  // Elimination in k[x..., a...] of a_i * den_i - num_i.
  std::vector<std::string> vars = ring->vars;
  vars.insert(vars.end(), names.begin(), names.end());
  RingPtr ext = make_ring(ring->field, vars);
  std::vector<std::size_t> to_ext(nv), from_ext(nv + n, 0);
  for (std::size_t i = 0; i < nv; ++i) to_ext[i] = i;
  for (std::size_t i = 0; i < n; ++i) from_ext[nv + i] = i;
  std::vector<Poly> rels;
  for (std::size_t i = 0; i < n; ++i)
    rels.push_back(Poly::variable(ext, nv + i) * elems[i].denominator().mapped(ext, to_ext) -
                   elems[i].numerator().mapped(ext, to_ext));
  std::vector<std::size_t> elim(nv);
  for (std::size_t i = 0; i < nv; ++i) elim[i] = i;
  for (const auto& r : eliminate(rels, elim, opts)) {
    Poly rel = r.mapped(out.relation_ring, from_ext);
    if (rel.is_zero() || rel.total_degree() == 0) continue;
    if (!relation_vanishes(rel, elems)) continue;
    out.outcome = DependenceVerdict::Outcome::Dependent;
    out.relation = rel;
    out.relation_text = relation_to_string(rel);
    return out;
  }
  fail(ErrorKind::CertificateNotFound, "neither a valuation certificate nor a relation was found");
}

bool verify_dependence(const std::vector<RatFunc>& elems, const DependenceVerdict& v) {
  if (v.outcome == DependenceVerdict::Outcome::Dependent)
    return !v.relation.is_zero() && v.relation.total_degree() > 0 && relation_vanishes(v.relation, elems);
  auto w = wedge_mod_units(v.valuation, elems);
  return !w.zero && w.value_rank == elems.size();
}

// ---- subfields ----

std::string SubfieldDesc::to_string() const {
  if (generators.empty()) return "k";
  std::string s = "acl(";
  for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i].to_string();
  return s + ")";
}

namespace {

bool depends(const std::vector<RatFunc>& xs, const EliminationOptions& opts) {
  return dependence_decide(xs, opts).outcome == DependenceVerdict::Outcome::Dependent;
}

std::vector<RatFunc> transcendence_basis(const std::vector<RatFunc>& gens, const EliminationOptions& opts) {
  std::vector<RatFunc> b;
  for (const auto& g : gens) {
    if (g.is_constant()) continue;
    b.push_back(g);
    if (depends(b, opts)) b.pop_back();
  }
  return b;
}

std::set<std::size_t> variables_of(const RatFunc& f) {
  std::set<std::size_t> vs;
  for (const auto& [p, e] : f.factors())
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i)
      if (p.degree_in(i) > 0) vs.insert(i);
  return vs;
}

}  // namespace

SubfieldDesc relative_algebraic_closure(const RingPtr& ring, const std::vector<RatFunc>& gens,
                                        const std::vector<RatFunc>& extra_candidates, const EliminationOptions& opts) {
  SubfieldDesc L;
  L.ring = ring;
  std::vector<RatFunc> g;
  for (const auto& x : gens)
    if (!x.is_constant() && std::find(g.begin(), g.end(), x) == g.end()) g.push_back(x);
  L.basis = transcendence_basis(g, opts);
  std::size_t nv = ring->nvars();
  L.closure_note = "candidates: ring variables";
  if (!extra_candidates.empty()) L.closure_note += " and " + std::to_string(extra_candidates.size()) + " extra elements";
  if (L.basis.size() == nv) {
    for (std::size_t i = 0; i < nv; ++i) L.generators.push_back(RatFunc::variable(ring, i));
    L.basis = L.generators;
    L.relatively_closed = true;
    L.closure_note = "whole field";
    return L;
  }
  if (L.basis.empty()) {
    L.relatively_closed = true;
    L.closure_note = "constants";
    return L;
  }
  // Adjoin candidates algebraic over the current basis.
  std::vector<RatFunc> adjoined;
  std::set<std::size_t> adjoined_vars;
  std::vector<RatFunc> cands;
  for (std::size_t i = 0; i < nv; ++i) cands.push_back(RatFunc::variable(ring, i));
  cands.insert(cands.end(), extra_candidates.begin(), extra_candidates.end());
  for (const auto& c : cands) {
    if (c.is_constant() || std::find(adjoined.begin(), adjoined.end(), c) != adjoined.end()) continue;
    std::vector<RatFunc> t = L.basis;
    t.push_back(c);
    if (!depends(t, opts)) continue;
    adjoined.push_back(c);
    auto vs = variables_of(c);
    if (vs.size() == 1 && c == RatFunc::variable(ring, *vs.begin())) adjoined_vars.insert(*vs.begin());
  }
  // Generators that are rational in adjoined variables are redundant.
  std::vector<RatFunc> gens_out = adjoined;
  for (const auto& x : g) {
    auto vs = variables_of(x);
    bool redundant = std::all_of(vs.begin(), vs.end(), [&](std::size_t v) { return adjoined_vars.count(v) > 0; });
    if (!redundant && std::find(gens_out.begin(), gens_out.end(), x) == gens_out.end()) gens_out.push_back(x);
  }
  L.generators = gens_out;
  L.basis = transcendence_basis(L.generators, opts);
  for (const auto& x : L.generators) {
    if (std::find(L.basis.begin(), L.basis.end(), x) != L.basis.end()) continue;
    std::vector<RatFunc> t = L.basis;
    t.push_back(x);
    auto d = dependence_decide(t, opts);
    if (d.outcome == DependenceVerdict::Outcome::Dependent) L.relation_ideal.push_back(d.relation);
  }
  L.relatively_closed = true;
  return L;
}

bool algebraic_over(const RatFunc& t, const SubfieldDesc& L, const EliminationOptions& opts) {
  if (t.is_constant()) return true;
  if (L.basis.empty()) return false;
  std::vector<RatFunc> xs = L.basis;
  xs.push_back(t);
  return depends(xs, opts);
}

bool subfield_leq(const SubfieldDesc& a, const SubfieldDesc& b, const EliminationOptions& opts) {
  return std::all_of(a.generators.begin(), a.generators.end(),
                     [&](const RatFunc& g) { return algebraic_over(g, b, opts); });
}

// ---- geometric membership ----

namespace {

RatFunc lift_of(const KVector& x, long& multiple) {
  mpz_class m = 1;
  for (const auto& [p, e] : x.support()) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), e.get_den().get_mpz_t());
  multiple = m.get_si();
  std::vector<std::pair<Poly, int>> fs;
  for (const auto& [p, e] : x.support()) fs.emplace_back(p, static_cast<int>(mpq_class(e * m).get_num().get_si()));
  return RatFunc::from_factors(x.ring(), 1, fs);
}

// v is trivial on L when the residues of a transcendence basis of L are
// units that stay algebraically independent in the residue field.
bool trivial_on(const Valuation& v, const SubfieldDesc& L, std::vector<std::string>* trace) {
  std::vector<RatFunc> res;
  for (const auto& b : L.basis) {
    auto val = v.value(b);
    if (std::any_of(val.begin(), val.end(), [](long e) { return e != 0; })) return false;
    Residue r = v.residue(b);
    if (r.kind != Residue::Kind::Function) return false;
    res.push_back(r.func);
  }
  if (res.empty()) return true;
  for (const auto& r : res)
    if (r.is_constant()) return false;
  if (res.size() > res[0].ring()->nvars()) return false;
  bool indep = dependence_decide(res).outcome == DependenceVerdict::Outcome::Independent;
  if (trace && indep) {
    std::string s = "residues of L's basis independent in Kv:";
    for (const auto& r : res) s += " " + r.to_string();
    trace->push_back(s);
  }
  return indep;
}

}  // namespace

MembershipVerdict geometric_membership(const KVector& x, const SubfieldDesc& L, const EliminationOptions& opts) {
  if (x.modulus().kind != SubgroupSpec::Kind::Constants)
    fail(ErrorKind::ModulusMismatch, "membership needs vectors modulo constants");
  MembershipVerdict out;
  out.lift = lift_of(x, out.multiple);
  if (algebraic_over(out.lift, L, opts)) {
    out.in_L = true;
    out.trace.push_back(std::to_string(out.multiple) + " * x lifts to " + out.lift.to_string() + ", algebraic over L");
    return out;
  }
  const RingPtr& ring = L.ring;
  std::vector<Valuation> cands;
  for (const auto& [p, e] : out.lift.factors()) cands.push_back(Valuation::pi_adic(p));
  for (std::size_t i = 0; i < ring->nvars(); ++i) cands.push_back(Valuation::pi_adic(Poly::variable(ring, i)));
  // Monomial valuations vanishing on monomial generators of L: prolongations
  // of an adic valuation over L.
  linalg::ZMatrix exps;
  for (const auto& b : L.basis) {
    linalg::ZVector e(ring->nvars(), 0);
    bool mono = true;
    for (const auto& [p, k] : b.factors()) {
      auto vs = variables_of(RatFunc::from_factors(ring, 1, {{p, 1}}));
      if (vs.size() != 1 || p != Poly::variable(ring, *vs.begin())) mono = false;
      else e[*vs.begin()] += k;
    }
    if (mono) exps.push_back(e);
  }
  if (!exps.empty() && exps.size() < ring->nvars()) {
    for (const auto& k : linalg::integer_kernel(exps, ring->nvars()))
      for (int sign : {1, -1}) {
        std::vector<long> u;
        for (const auto& c : k) u.push_back(sign * c.get_si());
        try {
          cands.push_back(Valuation::monomial(ring, {u}));
        } catch (const Error&) {
        }
      }
  }
  for (const auto& v : cands) {
    auto val = v.value(out.lift);
    if (val[0] == 0) continue;
    std::vector<std::string> tr;
    try {
      if (!trivial_on(v, L, &tr)) continue;
    } catch (const Error&) {
      continue;
    }
    auto vis = visibility_check(v, SubgroupSpec::constants(), {});
    if (!vis.visible) continue;
    out.valuation = v;
    out.value = val;
    out.trace = tr;
    out.trace.push_back("visible: " + vis.reason);
    out.trace.push_back("value of lift = " + std::to_string(val[0]) + " != 0");
    return out;
  }
  fail(ErrorKind::CertificateNotFound, "no excluding valuation among the candidates");
}

bool verify_exclusion(const KVector& x, const SubfieldDesc& L, const MembershipVerdict& m) {
  if (m.in_L || m.valuation.is_trivial()) return false;
  long mult = 1;
  RatFunc lift = lift_of(x, mult);
  auto val = m.valuation.value(lift);
  if (std::all_of(val.begin(), val.end(), [](long e) { return e == 0; })) return false;
  if (!visibility_check(m.valuation, SubgroupSpec::constants(), {}).visible) return false;
  return trivial_on(m.valuation, L, nullptr);
}

// ---- lattices ----

std::string GeomLattice::hasse() const {
  std::string s;
  std::size_t n = nodes.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !order[i][j] || order[j][i]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n; ++k)
        if (k != i && k != j && order[i][k] && order[k][j] && !order[k][i] && !order[j][k]) cover = false;
      if (cover) s += nodes[i].to_string() + " < " + nodes[j].to_string() + "\n";
    }
  return s;
}

namespace {

int find_node(const std::vector<SubfieldDesc>& nodes, const SubfieldDesc& x, const EliminationOptions& opts) {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].trdeg() == x.trdeg() && subfield_leq(x, nodes[i], opts) && subfield_leq(nodes[i], x, opts))
      return static_cast<int>(i);
  return -1;
}

// Elements of L used to compare geometric subspaces.
std::vector<RatFunc> probe_elements(const SubfieldDesc& L) {
  std::vector<RatFunc> out;
  for (const auto& g : L.generators) {
    out.push_back(g);
    for (long c : {1, -1}) {
      try {
        out.push_back(g + RatFunc::constant(L.ring, c));
      } catch (const Error&) {
      }
    }
  }
  return out;
}

}  // namespace

GeomLattice geometric_lattice(const std::vector<SubfieldDesc>& nodes, const EliminationOptions& opts) {
  GeomLattice G;
  G.nodes = nodes;
  std::size_t n = nodes.size();
  for (const auto& L : nodes)
    if (!L.relatively_closed) fail(ErrorKind::NotClosedNode, "node " + L.to_string() + " is not certified closed");
  G.order.assign(n, std::vector<bool>(n, false));
  G.kcal_order.assign(n, std::vector<bool>(n, false));
  G.meet.assign(n, std::vector<int>(n, -1));
  G.join.assign(n, std::vector<int>(n, -1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      G.order[i][j] = subfield_leq(nodes[i], nodes[j], opts);
      bool inside = true;
      for (const auto& e : probe_elements(nodes[i])) {
        auto m = geometric_membership(KVector::of(e), nodes[j], opts);
        if (!m.in_L) {
          inside = false;
          break;
        }
      }
      G.kcal_order[i][j] = inside;
    }
  G.embedding_holds = G.order == G.kcal_order;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j < i) {
        G.meet[i][j] = G.meet[j][i];
        G.join[i][j] = G.join[j][i];
        continue;
      }
      std::vector<RatFunc> all = nodes[i].generators;
      all.insert(all.end(), nodes[j].generators.begin(), nodes[j].generators.end());
      G.join[i][j] = find_node(nodes, relative_algebraic_closure(nodes[i].ring, all, {}, opts), opts);
      // Common elements among simple combinations of the generators.
      std::vector<RatFunc> cands = all;
      for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a + 1; b < all.size(); ++b) {
          cands.push_back(all[a] * all[b]);
          cands.push_back(all[a] / all[b]);
        }
      std::vector<RatFunc> common;
      for (const auto& c : cands)
        if (!c.is_constant() && algebraic_over(c, nodes[i], opts) && algebraic_over(c, nodes[j], opts))
          common.push_back(c);
      G.meet[i][j] = find_node(nodes, relative_algebraic_closure(nodes[i].ring, common, {}, opts), opts);
    }
  return G;
}

// ---- transcendence degree ----

TrdegCertificate trdeg_certificate(const RingPtr& ring, std::size_t d) {
  std::size_t nv = ring->nvars();
  if (d < 1 || d >= nv) fail(ErrorKind::DimensionTooSmall, "need 1 <= d < number of variables");
  TrdegCertificate c;
  c.d = d;
  std::vector<RatFunc> seq;
  for (std::size_t i = 0; i < d; ++i) seq.push_back(RatFunc::variable(ring, i));
  for (std::size_t i = d; i < nv; ++i) c.split.push_back(ring->vars[i]);
  c.valuation = Valuation::composite(ring, seq);
  std::vector<Functional> dgen;
  for (std::size_t i = 0; i < d; ++i) dgen.push_back(Functional::coordinate(c.valuation, i));
  // Two residue places of the first split variable.
  RatFunc z = RatFunc::variable(ring, d);
  for (const RatFunc& r : {z, z - RatFunc::constant(ring, 1)}) {
    auto s = seq;
    s.push_back(r);
    dgen.push_back(Functional::coordinate(Valuation::composite(ring, s), d));
  }
  c.D = FunctionalSpace::span(ring, dgen, "D");
  std::vector<Functional> amb = dgen;
  for (std::size_t i = 0; i < d; ++i)
    amb.push_back(Functional::coordinate(
        Valuation::pi_adic((RatFunc::variable(ring, i) + RatFunc::constant(ring, 1)).numerator())));
  c.ambient = FunctionalSpace::span(ring, amb, "ambient");
  auto cc = center_and_centralizer(c.D, c.D);
  c.center = cc.center;
  auto cz = center_and_centralizer(c.center, c.ambient);
  bool same = cz.centralizer.dim() == c.D.dim();
  for (const auto& f : c.D.basis())
    if (!cz.centralizer.contains(f)) same = false;
  c.conditions_hold = c.center.dim() != c.D.dim() && same && c.center.dim() >= d;
  return c;
}

std::size_t verify_trdeg(const TrdegCertificate& c) {
  if (!c.conditions_hold) return 0;
  Valuation v = minimal_valuation(c.center);
  linalg::QMatrix vals, vk;
  for (std::size_t i = 0; i < v.rank(); ++i) {
    auto val = v.value(v.uniformizer(i));
    vals.emplace_back(val.begin(), val.end());
  }
  for (const auto& lv : v.levels())
    if (lv.kind == Level::Kind::Prime) {
      auto val = v.value(RatFunc::constant(v.ring(), mpq_class(lv.p)));
      vk.emplace_back(val.begin(), val.end());
    }
  // dim Q (x) (vK / vk); Abhyankar gives trdeg(K|k) >= this.
  linalg::QMatrix all = vals;
  all.insert(all.end(), vk.begin(), vk.end());
  return linalg::rank(all, v.rank()) - linalg::rank(vk, v.rank());
}

// ---- prime subfield ----

ProbeReport prime_subfield_probe(const RatFunc& t, const ClosureOptions& opts) {
  ProbeReport rep;
  const RingPtr& ring = t.ring();
  const BaseField& F = ring->field;
  rep.characteristic_zero = F.is_rational();
  if (!rep.characteristic_zero) {
    rep.torsion = t.is_constant();
    rep.note = "constants are torsion, so the constant part of any closure is zero";
  } else {
    rep.torsion = t.is_constant() && (t.unit() == 1 || t.unit() == -1);
    if (rep.torsion) rep.note = "t is a root of unity";
  }
  if (rep.characteristic_zero && !rep.torsion) {
    auto M = milnor_closure(ring, {t}, SubgroupSpec::trivial(), std::nullopt, opts);
    auto c = [&](long v) { return RatFunc::constant(ring, v); };
    std::vector<std::function<RatFunc()>> steps = {
        [&] { return c(1) + t; },
        [&] { return c(2) + t; },
        [&] { return (c(2) + t) / t; },
        [&] { return c(2) / t; },
        [&] { return c(2); },
    };
    for (const auto& s : steps) {
      RatFunc e;
      try {
        e = s();
      } catch (const Error&) {
        rep.chain_certified.push_back(false);
        rep.derivations.push_back("undefined");
        continue;
      }
      rep.chain.push_back(e);
      bool in = M.contains(e);
      rep.chain_certified.push_back(in);
      std::string how = in ? "in span" : "not reached";
      for (const auto& m : M.members)
        if (m.element == e) how = m.to_string(F);
      rep.derivations.push_back(how);
    }
    rep.two_in_closure = M.contains(c(2));
  }
  if (!t.is_constant()) {
    for (const auto& [p, e] : t.factors()) {
      Valuation v = Valuation::pi_adic(p);
      if (!visibility_check(v, SubgroupSpec::trivial(), {}).visible) continue;
      rep.excluding = v;
      rep.excluding_value = v.value(t);
      break;
    }
    if (!rep.excluding) rep.note += std::string(rep.note.empty() ? "" : "; ") + "no visible excluding valuation";
  }
  return rep;
}

}  // namespace milnork
