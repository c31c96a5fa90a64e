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

#include "milnork/linalg.hpp"

#include <utility>

namespace milnork::linalg {

std::vector<std::size_t> rref(QMatrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    mpq_class inv = 1 / m[r][c];
    for (std::size_t j = c; j < ncols; ++j) m[r][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = c; j < ncols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const QMatrix& m, std::size_t ncols) {
  QMatrix a = m;
  return rref(a, ncols).size();
}

QMatrix kernel(const QMatrix& m, std::size_t ncols) {
  QMatrix a = m;
  auto piv = rref(a, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (auto c : piv) is_piv[c] = true;
  QMatrix out;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    QVector v(ncols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -a[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

QMatrix transpose(const QMatrix& m, std::size_t ncols) {
  QMatrix t(ncols, QVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = m[i][j];
  return t;
}

QMatrix left_kernel(const QMatrix& m, std::size_t ncols) {
  return kernel(transpose(m, ncols), m.size());
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b, std::size_t ncols) {
  QMatrix aug = a;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  auto piv = rref(aug, ncols + 1);
  if (!piv.empty() && piv.back() == ncols) return std::nullopt;
  QVector x(ncols, 0);
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][ncols];
  return x;
}

mpq_class determinant(const QMatrix& m) {
  std::size_t n = m.size();
  if (n == 0) return 1;
  // Scale rows to integers, then Bareiss.
  ZMatrix a(n, ZVector(n));
  mpq_class scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (auto& c : m[i]) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    scale /= l;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = mpq_class(m[i][j] * l).get_num();
  }
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    prev = a[k][k];
  }
  return mpq_class(a[n - 1][n - 1] * sign) * scale;
}

ZMatrix hnf(ZMatrix rows, std::size_t ncols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    // Euclid on column c among rows r..end.
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r == rows.size() || rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

bool in_lattice(const ZMatrix& h, ZVector v) {
  std::size_t ncols = v.size();
  std::size_t c = 0;
  for (const auto& row : h) {
    while (c < ncols && row[c] == 0) {
      if (v[c] != 0) return false;
      ++c;
    }
    if (c == ncols) break;
    if (v[c] % row[c] != 0) return false;
    mpz_class q = v[c] / row[c];
    for (std::size_t j = c; j < ncols; ++j) v[j] -= q * row[j];
    ++c;
  }
  for (; c < ncols; ++c)
    if (v[c] != 0) return false;
  return true;
}

ZMatrix integer_kernel(const ZMatrix& m, std::size_t ncols) {
  std::size_t nr = m.size();
  ZMatrix aug(ncols, ZVector(nr + ncols, 0));
  for (std::size_t j = 0; j < ncols; ++j) {
    for (std::size_t i = 0; i < nr; ++i) aug[j][i] = m[i][j];
    aug[j][nr + j] = 1;
  }
  // Row-reduce on the first nr columns only; the rows that end with a zero
  // prefix span the integer kernel.
  std::size_t r = 0;
  for (std::size_t c = 0; c < nr && r < aug.size(); ++c) {
    for (;;) {
      std::size_t best = aug.size();
      for (std::size_t i = r; i < aug.size(); ++i)
        if (aug[i][c] != 0 && (best == aug.size() || abs(aug[i][c]) < abs(aug[best][c]))) best = i;
      if (best == aug.size()) break;
      std::swap(aug[r], aug[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < aug.size(); ++i) {
        if (aug[i][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), aug[i][c].get_mpz_t(), aug[r][c].get_mpz_t());
        for (std::size_t j = 0; j < aug[i].size(); ++j) aug[i][j] -= q * aug[r][j];
        if (aug[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (r < aug.size() && aug[r][c] != 0) ++r;
  }
  ZMatrix out;
  for (std::size_t i = r; i < aug.size(); ++i) out.emplace_back(aug[i].begin() + nr, aug[i].end());
  return hnf(out, ncols);
}

ZVector primitive_integer(const QVector& v) {
  mpz_class l = 1;
  for (auto& c : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZVector z(v.size());
  mpz_class g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    z[i] = mpq_class(v[i] * l).get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[i].get_mpz_t());
  }
  if (g > 1)
    for (auto& c : z) c /= g;
  return z;
}

}  // namespace milnork::linalg
