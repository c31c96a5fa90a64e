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

#ifndef MILNORK_CLI_HPP_
#define MILNORK_CLI_HPP_

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "milnork/dual.hpp"
#include "milnork/symbols.hpp"
#include "milnork/valuation.hpp"

namespace milnork::cli {

// key = value lines; '#' starts a comment. Unknown keys are rejected.
struct Config {
  long steinberg_budget = 10000;
  std::size_t witness_pool = 256;
  std::size_t closure_rounds = 3;
  std::size_t closure_max_candidates = 4000;
  int max_var_degree = 48;
  bool parallel = true;
  bool timings = false;

  static Config parse(std::string_view text);
  static Config load(const std::string& path);
  void set(const std::string& key, const std::string& value);
};

struct Result {
  int exit_code = 0;  // 0 verdict, 2 unknown, 1 error
  std::string json;   // report without a trailing newline
};

// Runs one subcommand (argv excludes the program name). `pretty` selects
// indented output.
Result run_command(const std::vector<std::string>& args, const Config& cfg, bool pretty = true);

// Reads commands from `in`, one per line, writing one compact report per
// line. Returns the worst exit code (1 over 2 over 0).
int run_batch(std::istream& in, std::ostream& out, const Config& cfg);

// Entry point of the milnork tool.
int main(int argc, char** argv);

// ---- text formats shared with the tests ----

// Shell-like splitting with single and double quotes.
std::vector<std::string> split_words(std::string_view line);
// "trivial", "deg", "deg:[x,y]", "mono:[1,-1]", "prime:3", "pi:<poly>",
// "comp:[t1, t2, ...]" (elements of K) or "comp:[mono:[..], mono:[..]]".
Valuation parse_valuation(const RingPtr& ring, std::string_view text);
// Terms separated by ';', each "[coef@]valuation[#index]".
Functional parse_functional(const RingPtr& ring, std::string_view text);
// "{f, g}" terms with optional integer coefficients: "2*{f, g} - {a, b}".
K2Class parse_symbol(const RingPtr& ring, std::string_view text);

}  // namespace milnork::cli

#endif  // MILNORK_CLI_HPP_
