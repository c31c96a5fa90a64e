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

#ifndef MILNORK_LINALG_HPP_
#define MILNORK_LINALG_HPP_

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace milnork::linalg {

using QVector = std::vector<mpq_class>;
using QMatrix = std::vector<QVector>;  // row-major
using ZVector = std::vector<mpz_class>;
using ZMatrix = std::vector<ZVector>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols);
std::size_t rank(const QMatrix& m, std::size_t ncols);
// Basis of {x : m x = 0}.
QMatrix kernel(const QMatrix& m, std::size_t ncols);
// Basis of {y : y^T m = 0}.
QMatrix left_kernel(const QMatrix& m, std::size_t ncols);
std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t ncols);
// Fraction-free (Bareiss) determinant of a square matrix.
mpq_class determinant(const QMatrix& m);
QMatrix transpose(const QMatrix& m, std::size_t ncols);

// Hermite normal form of the row lattice; zero rows removed.
ZMatrix hnf(ZMatrix rows, std::size_t ncols);
// Whether v lies in the row lattice of an HNF basis.
bool in_lattice(const ZMatrix& hnf_rows, ZVector v);
// Basis of the integer kernel {x in Z^n : m x = 0}.
ZMatrix integer_kernel(const ZMatrix& m, std::size_t ncols);
// Clear denominators of a rational vector and make it primitive.
ZVector primitive_integer(const QVector& v);

}  // namespace milnork::linalg

#endif  // MILNORK_LINALG_HPP_
