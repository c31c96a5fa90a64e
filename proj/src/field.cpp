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

#include "milnork/field.hpp"

#include <sstream>

#include "milnork/errors.hpp"

namespace milnork {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroElement: return "ZeroElement";
    case ErrorKind::UnsupportedShape: return "UnsupportedShape";
    case ErrorKind::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::ZeroAtPoint: return "ZeroAtPoint";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::NotIndependent: return "NotIndependent";
    case ErrorKind::RankNotOne: return "RankNotOne";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::ModulusMismatch: return "ModulusMismatch";
    case ErrorKind::UndecidedPair: return "UndecidedPair";
    case ErrorKind::NotValuative: return "NotValuative";
    case ErrorKind::NotAlternating: return "NotAlternating";
    case ErrorKind::NoWitnessInPool: return "NoWitnessInPool";
    case ErrorKind::NotClosedNode: return "NotClosedNode";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::CertificateNotFound: return "CertificateNotFound";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

constexpr std::uint32_t kTableLimit = 1u << 20;

}  // namespace

FqArith::FqArith(std::uint32_t p, unsigned e) : p_(p), e_(e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  if (q > (1ull << 31)) fail(ErrorKind::InvalidArgument, "field order too large");
  q_ = static_cast<std::uint32_t>(q);
  if (e > 1 && q_ > (1u << 16))
    fail(ErrorKind::InvalidArgument, "extension fields are limited to q <= 65536");

  if (e == 1) {
    modulus_ = {0, 1};
    if (q_ > kTableLimit) return;
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    for (std::uint32_t g = 1; g < q_; ++g) {
      std::uint64_t x = 1;
      std::uint32_t k = 0;
      bool ok = true;
      for (; k < q_ - 1; ++k) {
        if (k > 0 && x == 1) { ok = false; break; }
        exp_[k] = static_cast<Elem>(x);
        x = x * g % q_;
      }
      if (ok) { gen_ = g; break; }
    }
    for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
    return;
  }

  // Search for a primitive monic modulus of degree e. Elements are
  // coefficient vectors; multiplication by alpha is a shift plus reduction.
  std::vector<std::uint32_t> coeffs(e, 0);
  auto encode = [&](const std::vector<std::uint32_t>& v) {
    Elem c = 0;
    for (unsigned i = e; i-- > 0;) c = c * p + v[i];
    return c;
  };
  for (std::uint64_t code = 0; code < q; ++code) {
    std::uint64_t c = code;
    for (unsigned i = 0; i < e; ++i) { coeffs[i] = c % p; c /= p; }
    if (coeffs[0] == 0) continue;
    std::vector<std::uint32_t> x(e, 0);
    x[0] = 1;
    exp_.assign(q_ - 1, 0);
    bool ok = true;
    for (std::uint32_t k = 0; k + 1 < q_; ++k) {
      Elem enc = encode(x);
      if (k > 0 && enc == 1) { ok = false; break; }
      exp_[k] = enc;
      // x <- x * alpha mod (alpha^e + sum coeffs[i] alpha^i)
      std::uint32_t top = x[e - 1];
      for (unsigned i = e - 1; i > 0; --i)
        x[i] = (x[i - 1] + (p - top * coeffs[i] % p)) % p;
      x[0] = (p - top * coeffs[0] % p) % p;
    }
    if (!ok || encode(x) != 1) continue;
    modulus_.assign(coeffs.begin(), coeffs.end());
    modulus_.push_back(1);
    break;
  }
  if (modulus_.empty()) fail(ErrorKind::InvalidArgument, "no primitive modulus found");
  log_.assign(q_, 0);
  for (std::uint32_t k = 0; k + 1 < q_; ++k) log_[exp_[k]] = k;
  gen_ = exp_.size() > 1 ? exp_[1] : 1;
}

FqArith::Elem FqArith::add(Elem a, Elem b) const {
  if (e_ == 1) {
    std::uint64_t s = std::uint64_t(a) + b;
    return static_cast<Elem>(s >= p_ ? s - p_ : s);
  }
  Elem r = 0, scale = 1;
  while (a || b) {
    r += scale * ((a % p_ + b % p_) % p_);
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return r;
}

FqArith::Elem FqArith::neg(Elem a) const {
  if (e_ == 1) return a == 0 ? 0 : p_ - a;
  Elem r = 0, scale = 1;
  while (a) {
    r += scale * ((p_ - a % p_) % p_);
    a /= p_;
    scale *= p_;
  }
  return r;
}

FqArith::Elem FqArith::sub(Elem a, Elem b) const { return add(a, neg(b)); }

FqArith::Elem FqArith::mul(Elem a, Elem b) const {
  if (a == 0 || b == 0) return 0;
  if (e_ == 1) return static_cast<Elem>(std::uint64_t(a) * b % p_);
  std::uint64_t k = std::uint64_t(log_[a]) + log_[b];
  if (k >= q_ - 1) k -= q_ - 1;
  return exp_[k];
}

FqArith::Elem FqArith::inv(Elem a) const {
  if (a == 0) fail(ErrorKind::ZeroElement, "inverse of zero in F_q");
  if (e_ == 1) {
    // Extended Euclid; valid for any prime size.
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t qt = r / nr;
      std::int64_t tmp = t - qt * nt; t = nt; nt = tmp;
      tmp = r - qt * nr; r = nr; nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  std::uint32_t k = log_[a];
  return exp_[k == 0 ? 0 : (q_ - 1 - k)];
}

FqArith::Elem FqArith::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::uint32_t FqArith::log(Elem a) const {
  if (a == 0) fail(ErrorKind::ZeroElement, "log of zero");
  if (log_.empty()) fail(ErrorKind::UnsupportedShape, "no log table for this field size");
  return log_[a];
}

FqArith::Elem FqArith::exp(std::uint64_t k) const {
  if (exp_.empty()) fail(ErrorKind::UnsupportedShape, "no exp table for this field size");
  return exp_[k % (q_ - 1)];
}

BaseField BaseField::rationals() { return BaseField(); }

BaseField BaseField::finite(std::uint32_t q) {
  if (q < 2) fail(ErrorKind::InvalidArgument, "field order must be >= 2");
  for (std::uint32_t p = 2; p <= q; ++p) {
    if (q % p != 0) continue;
    if (!is_prime(p)) break;
    unsigned e = 0;
    std::uint32_t r = q;
    while (r % p == 0) { r /= p; ++e; }
    if (r != 1) break;
    BaseField f;
    f.fq_ = std::make_shared<const FqArith>(p, e);
    return f;
  }
  fail(ErrorKind::InvalidArgument, "field order must be a prime power: " + std::to_string(q));
}

Scalar BaseField::from_int(long long v) const {
  if (!fq_) return Scalar(static_cast<long>(v));
  return Scalar(fq_->from_int(v));
}

Scalar BaseField::from_rational(const mpq_class& v) const {
  if (!fq_) return v;
  mpz_class p = fq_->p();
  mpz_class n = v.get_num() % p;
  mpz_class d = v.get_den() % p;
  if (n < 0) n += p;
  if (d == 0) fail(ErrorKind::ZeroElement, "denominator vanishes in characteristic " + p.get_str());
  FqArith::Elem ne = static_cast<FqArith::Elem>(n.get_ui());
  FqArith::Elem de = static_cast<FqArith::Elem>(d.get_ui());
  return Scalar(fq_->mul(ne, fq_->inv(de)));
}

Scalar BaseField::coerce(const Scalar& v) const {
  if (!fq_) return v;
  if (v.get_den() == 1 && sgn(v) >= 0 && v < fq_->q()) return v;
  return from_rational(v);
}

FqArith::Elem BaseField::to_code(const Scalar& a) const {
  return static_cast<FqArith::Elem>(a.get_num().get_ui());
}

Scalar BaseField::add(const Scalar& a, const Scalar& b) const {
  if (!fq_) return a + b;
  return Scalar(fq_->add(to_code(a), to_code(b)));
}

Scalar BaseField::sub(const Scalar& a, const Scalar& b) const {
  if (!fq_) return a - b;
  return Scalar(fq_->sub(to_code(a), to_code(b)));
}

Scalar BaseField::neg(const Scalar& a) const {
  if (!fq_) return -a;
  return Scalar(fq_->neg(to_code(a)));
}

Scalar BaseField::mul(const Scalar& a, const Scalar& b) const {
  if (!fq_) return a * b;
  return Scalar(fq_->mul(to_code(a), to_code(b)));
}

Scalar BaseField::inv(const Scalar& a) const {
  if (is_zero(a)) fail(ErrorKind::ZeroElement, "inverse of zero");
  if (!fq_) return 1 / a;
  return Scalar(fq_->inv(to_code(a)));
}

Scalar BaseField::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar BaseField::pow(const Scalar& a, long long k) const {
  if (k < 0) return pow(inv(a), -k);
  Scalar r = one(), b = a;
  while (k > 0) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

std::vector<Scalar> BaseField::units() const {
  std::vector<Scalar> out;
  if (!fq_) return out;
  for (std::uint32_t c = 1; c < fq_->q(); ++c) out.emplace_back(c);
  return out;
}

std::string BaseField::to_string(const Scalar& a) const {
  if (!fq_ || fq_->e() == 1) return a.get_str();
  // Extension field elements print as their code in brackets.
  return "[" + a.get_str() + "]";
}

std::string BaseField::name() const {
  if (!fq_) return "Q";
  return "F" + std::to_string(fq_->q());
}

}  // namespace milnork
