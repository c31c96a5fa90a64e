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

#ifndef MILNORK_ERRORS_HPP_
#define MILNORK_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace milnork {

enum class ErrorKind {
  ZeroElement,
  UnsupportedShape,
  DegreeCapExceeded,
  PoleAtPoint,
  ZeroAtPoint,
  NotAUnit,
  NotIndependent,
  RankNotOne,
  BudgetExceeded,
  ModulusMismatch,
  UndecidedPair,
  NotValuative,
  NotAlternating,
  NoWitnessInPool,
  NotClosedNode,
  DimensionTooSmall,
  CertificateNotFound,
  SyntaxError,
  UnknownVariable,
  UsageError,
  InvalidArgument,
};

std::string_view error_kind_name(ErrorKind kind);

// All library failures surface as this exception; `kind()` is the
// machine-readable tag reported by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace milnork

#endif  // MILNORK_ERRORS_HPP_
