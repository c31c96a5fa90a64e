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

#ifndef MILNORK_FIELD_HPP_
#define MILNORK_FIELD_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace milnork {

// Coefficients are exact rationals. Over F_q the stored value is the
// integer code of the element in [0, q).
using Scalar = mpq_class;

// Arithmetic in F_q on integer codes. For q = p the code is the residue;
// for q = p^e the code is the base-p digit vector of the coordinates in the
// power basis of a primitive modulus polynomial.
class FqArith {
 public:
  using Elem = std::uint32_t;

  explicit FqArith(std::uint32_t p, unsigned e);

  std::uint32_t p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem from_int(long long v) const;
  // Generator of F_q^x.
  Elem generator() const { return gen_; }
  // Discrete log base generator(); a != 0.
  std::uint32_t log(Elem a) const;
  Elem exp(std::uint64_t k) const;
  // Modulus coefficients (low to high, monic, degree e); {0,1} when e == 1.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

 private:
  std::uint32_t p_;
  unsigned e_;
  std::uint32_t q_;
  Elem gen_ = 1;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

// The constant field k: F_q or Q.
class BaseField {
 public:
  static BaseField rationals();
  static BaseField finite(std::uint32_t q);

  bool is_finite() const { return fq_ != nullptr; }
  bool is_rational() const { return fq_ == nullptr; }
  std::uint32_t characteristic() const { return fq_ ? fq_->p() : 0; }
  std::uint32_t order() const { return fq_ ? fq_->q() : 0; }
  unsigned degree() const { return fq_ ? fq_->e() : 0; }
  const FqArith& fq() const { return *fq_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_int(long long v) const;
  // Image of a rational number; fails with ZeroElement on a denominator
  // divisible by the characteristic.
  Scalar from_rational(const mpq_class& v) const;
  // Integers in [0, q) are taken as element codes; anything else is mapped
  // as a rational number.
  Scalar coerce(const Scalar& v) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const;
  Scalar pow(const Scalar& a, long long k) const;
  bool is_zero(const Scalar& a) const { return sgn(a) == 0; }
  bool is_one(const Scalar& a) const { return a == 1; }

  FqArith::Elem to_code(const Scalar& a) const;
  Scalar from_code(FqArith::Elem c) const { return Scalar(c); }

  // Nonzero elements of a finite field in code order.
  std::vector<Scalar> units() const;

  std::string to_string(const Scalar& a) const;
  // `F<q>` or `Q`.
  std::string name() const;

  bool operator==(const BaseField& o) const {
    return order() == o.order() && is_finite() == o.is_finite();
  }

 private:
  std::shared_ptr<const FqArith> fq_;
};

}  // namespace milnork

#endif  // MILNORK_FIELD_HPP_
