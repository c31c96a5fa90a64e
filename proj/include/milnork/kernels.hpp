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

#ifndef MILNORK_KERNELS_HPP_
#define MILNORK_KERNELS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "milnork/linalg.hpp"
#include "milnork/ratfunc.hpp"

namespace milnork {

class Functional;

namespace kernels {

// Smallest i < n with pred(i), or n. The parallel version evaluates
// candidates concurrently but returns the same index as the serial one.
// Exceptions thrown by pred are rethrown on the calling thread.
std::size_t first_index_serial(std::size_t n, const std::function<bool(std::size_t)>& pred);
std::size_t first_index_parallel(std::size_t n, const std::function<bool(std::size_t)>& pred);

// Runs fn(i) for i < n; fn writes into its own slot. Exceptions from the
// lowest failing index are rethrown.
void for_each_serial(std::size_t n, const std::function<void(std::size_t)>& fn);
void for_each_parallel(std::size_t n, const std::function<void(std::size_t)>& fn);

// Witness scan: first x in pool with f(x) g(1-x) != f(1-x) g(x).
std::size_t witness_scan_serial(const Functional& f, const Functional& g, const std::vector<RatFunc>& xs,
                                const std::vector<RatFunc>& ys);
std::size_t witness_scan_parallel(const Functional& f, const Functional& g, const std::vector<RatFunc>& xs,
                                  const std::vector<RatFunc>& ys);

// M[i][j] = fs[i](xs[j]).
linalg::QMatrix evaluate_serial(const std::vector<Functional>& fs, const std::vector<RatFunc>& xs);
linalg::QMatrix evaluate_parallel(const std::vector<Functional>& fs, const std::vector<RatFunc>& xs);

}  // namespace kernels
}  // namespace milnork

#endif  // MILNORK_KERNELS_HPP_
