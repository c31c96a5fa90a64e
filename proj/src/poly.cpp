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

#include "milnork/poly.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "milnork/errors.hpp"

namespace milnork {

int Ring::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

RingPtr make_ring(BaseField field, std::vector<std::string> vars) {
  return std::make_shared<const Ring>(Ring{std::move(field), std::move(vars)});
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

namespace {
bool grlex_greater(const Term& a, const Term& b) {
  return grlex_compare(a.exps, b.exps) > 0;
}
}  // namespace

void Poly::normalize() {
  const BaseField& F = ring_->field;
  std::sort(terms_.begin(), terms_.end(), grlex_greater);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exps == t.exps) {
      out.back().coef = F.add(out.back().coef, t.coef);
    } else {
      out.push_back(std::move(t));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](const Term& t) { return F.is_zero(t.coef); }),
            out.end());
  terms_ = std::move(out);
}

Poly Poly::constant(RingPtr ring, const Scalar& c) {
  Poly p(ring);
  Scalar v = ring->field.coerce(c);
  if (sgn(v) != 0) p.terms_.push_back({Monomial(ring->nvars(), 0), v});
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  Monomial m(ring->nvars(), 0);
  m.at(index) = 1;
  return monomial(std::move(ring), std::move(m), 1);
}

Poly Poly::monomial(RingPtr ring, Monomial exps, const Scalar& c) {
  Poly p(ring);
  Scalar v = ring->field.coerce(c);
  if (sgn(v) != 0) p.terms_.push_back({std::move(exps), v});
  return p;
}

Poly Poly::from_terms(RingPtr ring, std::vector<Term> terms) {
  Poly p(std::move(ring));
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (int e : terms_[0].exps)
    if (e != 0) return false;
  return true;
}

bool Poly::is_one() const { return is_constant() && !is_zero() && terms_[0].coef == 1; }

Scalar Poly::constant_term() const {
  if (terms_.empty()) return 0;
  const Term& t = terms_.back();
  for (int e : t.exps)
    if (e != 0) return 0;
  return t.coef;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (int e : terms_[0].exps) d += e;
  return d;
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

int Poly::low_degree_in(std::size_t var) const {
  if (terms_.empty()) return 0;
  int d = terms_[0].exps[var];
  for (const auto& t : terms_) d = std::min(d, t.exps[var]);
  return d;
}

std::vector<bool> Poly::support() const {
  std::vector<bool> s(ring_ ? ring_->nvars() : 0, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < t.exps.size(); ++i)
      if (t.exps[i]) s[i] = true;
  return s;
}

std::size_t Poly::num_vars_used() const {
  auto s = support();
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coef = field().neg(t.coef);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  if (!ring_) return o;
  if (!o.ring_) return *this;
  const BaseField& F = field();
  Poly r(ring_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    int c;
    if (i == terms_.size()) c = -1;
    else if (j == o.terms_.size()) c = 1;
    else c = grlex_compare(terms_[i].exps, o.terms_[j].exps);
    if (c > 0) {
      r.terms_.push_back(terms_[i++]);
    } else if (c < 0) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      Scalar s = F.add(terms_[i].coef, o.terms_[j].coef);
      if (!F.is_zero(s)) r.terms_.push_back({terms_[i].exps, s});
      ++i;
      ++j;
    }
  }
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (!ring_ || !o.ring_) return Poly(ring_ ? ring_ : o.ring_);
  const BaseField& F = field();
  std::map<Monomial, Scalar> acc;
  const std::size_t n = ring_->nvars();
  Monomial m(n);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      for (std::size_t k = 0; k < n; ++k) m[k] = a.exps[k] + b.exps[k];
      Scalar c = F.mul(a.coef, b.coef);
      auto it = acc.find(m);
      if (it == acc.end()) acc.emplace(m, c);
      else it->second = F.add(it->second, c);
    }
  std::vector<Term> ts;
  ts.reserve(acc.size());
  for (auto& [k, v] : acc)
    if (!F.is_zero(v)) ts.push_back({k, v});
  return from_terms(ring_, std::move(ts));
}

Poly Poly::scaled(const Scalar& c) const {
  const BaseField& F = field();
  Scalar v = F.coerce(c);
  Poly r(ring_);
  if (F.is_zero(v)) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coef = F.mul(t.coef, v);
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(ring_, 1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) fail(ErrorKind::ZeroElement, "division by zero polynomial");
  const BaseField& F = field();
  Poly rem = *this;
  std::vector<Term> q;
  const Term& ld = d.leading();
  Scalar inv_lc = F.inv(ld.coef);
  const std::size_t n = ring_->nvars();
  // Leading-term division in grlex; fails as soon as the leading term of the
  // remainder is not divisible by that of d.
  while (!rem.is_zero()) {
    const Term& lr = rem.leading();
    Monomial m(n);
    for (std::size_t k = 0; k < n; ++k) {
      m[k] = lr.exps[k] - ld.exps[k];
      if (m[k] < 0) return std::nullopt;
    }
    Term t{m, F.mul(lr.coef, inv_lc)};
    Poly step = monomial(ring_, t.exps, t.coef) * d;
    rem = rem - step;
    q.push_back(std::move(t));
  }
  return from_terms(ring_, std::move(q));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field().inv(leading_coef()));
}

Poly Poly::derivative(std::size_t var) const {
  const BaseField& F = field();
  std::vector<Term> ts;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term u = t;
    u.coef = F.mul(t.coef, F.from_int(t.exps[var]));
    u.exps[var] -= 1;
    if (!F.is_zero(u.coef)) ts.push_back(std::move(u));
  }
  return from_terms(ring_, std::move(ts));
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  const BaseField& F = field();
  Scalar acc = 0;
  for (const auto& t : terms_) {
    Scalar v = t.coef;
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k]) v = F.mul(v, F.pow(point[k], t.exps[k]));
    acc = F.add(acc, v);
  }
  return acc;
}

Poly Poly::substitute(std::size_t var, const Poly& value) const {
  auto cs = coefficients_in(var);
  // Horner in the substituted variable.
  Poly acc(ring_);
  for (std::size_t k = cs.size(); k-- > 0;) acc = acc * value + cs[k];
  return acc;
}

std::vector<Poly> Poly::coefficients_in(std::size_t var) const {
  int d = degree_in(var);
  std::vector<std::vector<Term>> buckets(d < 0 ? 0 : d + 1);
  for (const auto& t : terms_) {
    Term u = t;
    int k = u.exps[var];
    u.exps[var] = 0;
    buckets[k].push_back(std::move(u));
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(ring_, std::move(b)));
  return out;
}

Poly Poly::mapped(RingPtr target, const std::vector<std::size_t>& var_map) const {
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m(target->nvars(), 0);
    for (std::size_t k = 0; k < t.exps.size(); ++k)
      if (t.exps[k]) m.at(var_map.at(k)) += t.exps[k];
    ts.push_back({std::move(m), t.coef});
  }
  return from_terms(std::move(target), std::move(ts));
}

std::string monomial_to_string(const Ring& ring, const Monomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!m[k]) continue;
    if (!s.empty()) s += '*';
    s += ring.vars[k];
    if (m[k] > 1) s += '^' + std::to_string(m[k]);
  }
  return s;
}

std::string Poly::to_string() const {
  return to_string([](const Monomial& a, const Monomial& b) { return grlex_compare(a, b) > 0; });
}

std::string Poly::to_string(
    const std::function<bool(const Monomial&, const Monomial&)>& first) const {
  if (terms_.empty()) return "0";
  const BaseField& F = field();
  std::vector<const Term*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [&](const Term* a, const Term* b) { return first(a->exps, b->exps); });
  std::ostringstream os;
  bool lead = true;
  for (const Term* t : order) {
    std::string mono = monomial_to_string(*ring_, t->exps);
    Scalar c = t->coef;
    bool neg = false;
    if (F.is_rational() && sgn(c) < 0) {
      neg = true;
      c = -c;
    } else if (F.is_finite() && F.degree() == 1 && 2 * c > F.order()) {
      // Symmetric residues read better: x - 1 rather than x + 4.
      neg = true;
      c = F.order() - c;
    }
    if (lead) {
      if (neg) os << '-';
    } else {
      os << (neg ? " - " : " + ");
    }
    lead = false;
    std::string cs = F.to_string(c);
    if (mono.empty()) {
      os << cs;
    } else if (c == 1) {
      os << mono;
    } else {
      os << cs << '*' << mono;
    }
  }
  return os.str();
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  std::size_t n = std::min(terms_.size(), o.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = grlex_compare(terms_[i].exps, o.terms_[i].exps);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    int k = cmp(terms_[i].coef, o.terms_[i].coef);
    if (k != 0) return k < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return terms_.size() <=> o.terms_.size();
}

}  // namespace milnork
