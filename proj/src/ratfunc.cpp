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

#include "milnork/ratfunc.hpp"

#include <algorithm>
#include <map>

#include "milnork/errors.hpp"

namespace milnork {

void RatFunc::canonicalize() {
  std::sort(factors_.begin(), factors_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Poly, int>> out;
  for (auto& f : factors_) {
    if (!out.empty() && out.back().first == f.first) {
      out.back().second += f.second;
    } else {
      out.push_back(std::move(f));
    }
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& f) { return f.second == 0; }),
            out.end());
  factors_ = std::move(out);
}

RatFunc RatFunc::normalize(const Poly& num, const Poly& den) {
  if (num.is_zero()) fail(ErrorKind::ZeroElement, "zero is not an element of the multiplicative group");
  if (den.is_zero()) fail(ErrorKind::ZeroElement, "zero denominator");
  const BaseField& F = num.field();
  auto fn = factor(num);
  auto fd = factor(den);
  RatFunc r;
  r.ring_ = num.ring();
  r.unit_ = F.div(fn.unit, fd.unit);
  for (auto& f : fn.factors) r.factors_.push_back(f);
  for (auto& f : fd.factors) r.factors_.emplace_back(f.first, -f.second);
  r.canonicalize();
  return r;
}

RatFunc RatFunc::constant(RingPtr ring, const Scalar& c) {
  Scalar v = ring->field.coerce(c);
  if (ring->field.is_zero(v)) fail(ErrorKind::ZeroElement, "zero constant");
  RatFunc r;
  r.ring_ = std::move(ring);
  r.unit_ = v;
  return r;
}

RatFunc RatFunc::variable(RingPtr ring, std::size_t index) {
  RatFunc r;
  r.factors_.emplace_back(Poly::variable(ring, index), 1);
  r.ring_ = std::move(ring);
  return r;
}

RatFunc RatFunc::from_factors(RingPtr ring, Scalar unit, std::vector<std::pair<Poly, int>> fs) {
  RatFunc r;
  r.ring_ = std::move(ring);
  r.unit_ = r.ring_->field.coerce(unit);
  if (r.ring_->field.is_zero(r.unit_)) fail(ErrorKind::ZeroElement, "zero unit");
  r.factors_ = std::move(fs);
  r.canonicalize();
  return r;
}

int RatFunc::exponent_of(const Poly& p) const {
  for (const auto& [f, e] : factors_)
    if (f == p) return e;
  return 0;
}

Poly RatFunc::numerator() const {
  Poly acc = Poly::constant(ring_, unit_);
  for (const auto& [f, e] : factors_)
    if (e > 0) acc = acc * f.pow(static_cast<unsigned>(e));
  return acc;
}

Poly RatFunc::denominator() const {
  Poly acc = Poly::constant(ring_, 1);
  for (const auto& [f, e] : factors_)
    if (e < 0) acc = acc * f.pow(static_cast<unsigned>(-e));
  return acc;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  RatFunc r;
  r.ring_ = ring_;
  r.unit_ = field().mul(unit_, o.unit_);
  r.factors_ = factors_;
  r.factors_.insert(r.factors_.end(), o.factors_.begin(), o.factors_.end());
  r.canonicalize();
  return r;
}

RatFunc RatFunc::inverse() const {
  RatFunc r = *this;
  r.unit_ = field().inv(unit_);
  for (auto& f : r.factors_) f.second = -f.second;
  return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(long k) const {
  RatFunc r = *this;
  r.unit_ = field().pow(unit_, k);
  for (auto& f : r.factors_) f.second = static_cast<int>(f.second * k);
  r.canonicalize();
  return r;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.unit_ = field().neg(unit_);
  return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  // Pull out the common part, then add the cofactors over a common
  // denominator and factor only the new numerator.
  std::map<Poly, std::pair<int, int>> ex;
  for (const auto& [f, e] : factors_) ex[f].first = e;
  for (const auto& [f, e] : o.factors_) ex[f].second = e;
  std::vector<std::pair<Poly, int>> common;
  Poly a = Poly::constant(ring_, unit_), b = Poly::constant(ring_, o.unit_);
  Poly den = Poly::constant(ring_, 1);
  for (const auto& [f, es] : ex) {
    int c = std::min(es.first, es.second);
    int ra = es.first - c, rb = es.second - c;
    // Exactly one of ra, rb is zero; the other is nonnegative.
    if (c != 0) common.emplace_back(f, c);
    if (ra > 0) a = a * f.pow(static_cast<unsigned>(ra));
    if (rb > 0) b = b * f.pow(static_cast<unsigned>(rb));
  }
  Poly sum = a + b;
  if (sum.is_zero()) fail(ErrorKind::ZeroElement, "sum vanishes");
  auto fs = factor(sum);
  for (auto& f : fs.factors) common.push_back(f);
  return from_factors(ring_, fs.unit, std::move(common));
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::one_minus() const { return constant(ring_, 1) - *this; }

Scalar RatFunc::specialize(const std::vector<Scalar>& point) const {
  const BaseField& F = field();
  if (point.size() < ring_->nvars()) fail(ErrorKind::InvalidArgument, "assignment does not cover all variables");
  Scalar num = unit_, den = 1;
  bool zero = false;
  for (const auto& [f, e] : factors_) {
    Scalar v = f.evaluate(point);
    if (F.is_zero(v)) {
      if (e < 0) fail(ErrorKind::PoleAtPoint, "denominator vanishes at the point");
      zero = true;
      continue;
    }
    if (e > 0) num = F.mul(num, F.pow(v, e));
    else den = F.mul(den, F.pow(v, -e));
  }
  if (zero) return 0;
  return F.div(num, den);
}

Scalar RatFunc::specialize_unit(const std::vector<Scalar>& point) const {
  Scalar v = specialize(point);
  if (field().is_zero(v)) fail(ErrorKind::ZeroAtPoint, "value is zero at the point");
  return v;
}

namespace {
std::string factor_text(const Poly& p, int e) {
  std::string s = p.to_string();
  if (p.terms().size() > 1) s = "(" + s + ")";
  if (e > 1) s += "^" + std::to_string(e);
  return s;
}
}  // namespace

std::string RatFunc::to_string() const {
  const BaseField& F = field();
  std::string num, den;
  int nden = 0;
  // Print by degree, then text, so x*y reads naturally.
  auto shown = factors_;
  std::stable_sort(shown.begin(), shown.end(), [](const auto& a, const auto& b) {
    int da = a.first.total_degree(), db = b.first.total_degree();
    return da != db ? da < db : a.first.to_string() < b.first.to_string();
  });
  for (const auto& [f, e] : shown) {
    if (e > 0) num += (num.empty() ? "" : "*") + factor_text(f, e);
    else {
      den += (den.empty() ? "" : "*") + factor_text(f, -e);
      ++nden;
    }
  }
  std::string u;
  Scalar c = unit_;
  bool neg = F.is_rational() && sgn(c) < 0;
  if (neg) c = -c;
  std::string cs = F.to_string(c);
  if (cs.find('/') != std::string::npos) cs = "(" + cs + ")";
  std::string out;
  if (num.empty()) out = cs;
  else out = (c == 1 ? "" : cs + "*") + num;
  if (neg) out = "-" + out;
  if (!nden && !neg && c == 1 && factors_.size() == 1 && factors_[0].second == 1)
    return factors_[0].first.to_string();
  if (nden) {
    bool single = nden == 1;
    out += "/" + (single ? den : "(" + den + ")");
  }
  return out;
}

std::strong_ordering RatFunc::operator<=>(const RatFunc& o) const {
  std::size_t n = std::min(factors_.size(), o.factors_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = factors_[i].first <=> o.factors_[i].first; c != 0) return c;
    if (auto c = factors_[i].second <=> o.factors_[i].second; c != 0) return c;
  }
  if (auto c = factors_.size() <=> o.factors_.size(); c != 0) return c;
  int k = cmp(unit_, o.unit_);
  return k < 0 ? std::strong_ordering::less : k > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace milnork
