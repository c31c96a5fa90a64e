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

#include "milnork/kernels.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "milnork/dual.hpp"

namespace milnork::kernels {

std::size_t first_index_serial(std::size_t n, const std::function<bool(std::size_t)>& pred) {
  for (std::size_t i = 0; i < n; ++i)
    if (pred(i)) return i;
  return n;
}

std::size_t first_index_parallel(std::size_t n, const std::function<bool(std::size_t)>& pred) {
  std::atomic<std::size_t> best{n};
  std::exception_ptr err;
  std::size_t err_at = n;
  std::mutex mu;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (long i = 0; i < count; ++i) {
    auto idx = static_cast<std::size_t>(i);
    if (idx >= best.load()) continue;
    try {
      if (pred(idx)) {
        std::size_t cur = best.load();
        while (idx < cur && !best.compare_exchange_weak(cur, idx)) {
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (idx < err_at) {
        err_at = idx;
        err = std::current_exception();
      }
    }
  }
  // Match the serial order: an earlier exception wins over a later hit.
  if (err && err_at < best.load()) std::rethrow_exception(err);
  return best.load();
}

void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& fn) {
  std::exception_ptr err;
  std::size_t err_at = n;
  std::mutex mu;
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 2)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (static_cast<std::size_t>(i) < err_at) {
        err_at = static_cast<std::size_t>(i);
        err = std::current_exception();
      }
    }
  }
  if (err) std::rethrow_exception(err);
}

std::size_t witness_scan_serial(const Functional& f, const Functional& g, const std::vector<RatFunc>& xs,
                                const std::vector<RatFunc>& ys) {
  return first_index_serial(xs.size(), [&](std::size_t i) { return sgn(defect(f, g, xs[i], ys[i])) != 0; });
}

std::size_t witness_scan_parallel(const Functional& f, const Functional& g, const std::vector<RatFunc>& xs,
                                  const std::vector<RatFunc>& ys) {
  return first_index_parallel(xs.size(), [&](std::size_t i) { return sgn(defect(f, g, xs[i], ys[i])) != 0; });
}

linalg::QMatrix evaluate_serial(const std::vector<Functional>& fs, const std::vector<RatFunc>& xs) {
  linalg::QMatrix m(fs.size(), linalg::QVector(xs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) m[i][j] = fs[i](xs[j]);
  return m;
}

linalg::QMatrix evaluate_parallel(const std::vector<Functional>& fs, const std::vector<RatFunc>& xs) {
  linalg::QMatrix m(fs.size(), linalg::QVector(xs.size()));
  const long total = static_cast<long>(fs.size() * xs.size());
  std::exception_ptr err;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 8)
  for (long k = 0; k < total; ++k) {
    std::size_t i = static_cast<std::size_t>(k) / xs.size(), j = static_cast<std::size_t>(k) % xs.size();
    try {
      m[i][j] = fs[i](xs[j]);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return m;
}

}  // namespace milnork::kernels
