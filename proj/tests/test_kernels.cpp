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

// Parallel kernels must agree with their serial references exactly.
#include <doctest.h>

#include <stdexcept>

#include "milnork/dual.hpp"
#include "milnork/kernels.hpp"
#include "support.hpp"

using namespace milnork;
using namespace testing_support;

TEST_CASE("first index is deterministic") {
  for (std::size_t n : {0u, 1u, 7u, 1000u}) {
    for (std::size_t target : {0u, 3u, 500u, 999u, 5000u}) {
      auto pred = [&](std::size_t i) { return i >= target && i % 3 == target % 3; };
      CHECK(kernels::first_index_parallel(n, pred) == kernels::first_index_serial(n, pred));
    }
  }
  auto throwing = [](std::size_t i) -> bool {
    if (i == 40) throw std::runtime_error("boom");
    return false;
  };
  CHECK_THROWS_AS(kernels::first_index_parallel(100, throwing), std::runtime_error);
  CHECK(kernels::first_index_parallel(100, [](std::size_t i) { return i == 10; }) == 10);
}

TEST_CASE("for_each fills every slot and rethrows the lowest failure") {
  std::vector<long> a(500, 0), b(500, 0);
  kernels::for_each_serial(a.size(), [&](std::size_t i) { a[i] = static_cast<long>(i * i); });
  kernels::for_each_parallel(b.size(), [&](std::size_t i) { b[i] = static_cast<long>(i * i); });
  CHECK(a == b);
  try {
    kernels::for_each_parallel(200, [](std::size_t i) {
      if (i == 17 || i == 150) throw std::runtime_error(std::to_string(i));
    });
    FAIL("expected a throw");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "17");
  }
}

TEST_CASE("witness scan and evaluation agree with serial versions") {
  RingPtr q = parse_field("Q(t)");
  Functional f = Functional::coordinate(Valuation::pi_adic(P("t", q)), 0);
  Functional g = Functional::coordinate(Valuation::pi_adic(P("1-t", q)), 0);
  Functional h = Functional::coordinate(Valuation::pi_adic(P("t+3", q)), 0);
  auto xs = witness_pool(q, {f, g, h}, 128);
  std::vector<RatFunc> ys;
  for (const auto& x : xs) ys.push_back(x.one_minus());
  CHECK(kernels::witness_scan_parallel(f, g, xs, ys) == kernels::witness_scan_serial(f, g, xs, ys));
  CHECK(kernels::witness_scan_parallel(f, f, xs, ys) == xs.size());
  CHECK(kernels::evaluate_parallel({f, g, h}, xs) == kernels::evaluate_serial({f, g, h}, xs));
}
