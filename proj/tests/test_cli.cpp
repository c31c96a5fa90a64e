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

#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "milnork/cli.hpp"
#include "milnork/errors.hpp"
#include "milnork/parse.hpp"

using namespace milnork;
using Json = nlohmann::json;

namespace {

cli::Result run(const std::string& line) { return cli::run_command(cli::split_words(line), cli::Config{}, false); }

// Every number in a report is a string, schema aside.
bool numbers_are_strings(const Json& j, bool top = true) {
  if (j.is_number()) return false;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (top && it.key() == "schema") continue;
      if (!numbers_are_strings(*it, false)) return false;
    }
  }
  if (j.is_array())
    for (const auto& x : j)
      if (!numbers_are_strings(x, false)) return false;
  return true;
}

}  // namespace

TEST_CASE("config files") {
  auto c = cli::Config::parse("# comment\nwitness_pool = 32\nparallel=false  # trailing\n\n");
  CHECK(c.witness_pool == 32);
  CHECK_FALSE(c.parallel);
  CHECK(c.steinberg_budget == 10000);
  CHECK_THROWS_AS(cli::Config::parse("nonsense = 1"), Error);
  CHECK_THROWS_AS(cli::Config::parse("witness_pool = many"), Error);
  CHECK_THROWS_AS(cli::Config::parse("just text"), Error);
}

TEST_CASE("word splitting") {
  CHECK(cli::split_words(R"~(depend --field "F5(x,y)" --elems x 'x^2 + 1')~") ==
        std::vector<std::string>{"depend", "--field", "F5(x,y)", "--elems", "x", "x^2 + 1"});
  CHECK(cli::split_words(R"~(a "" b)~") == std::vector<std::string>{"a", "", "b"});
  CHECK_THROWS_AS(cli::split_words("a \"b"), Error);
}

TEST_CASE("valuation, functional and symbol literals") {
  RingPtr r = parse_field("F5(x,y)");
  for (const char* d : {"trivial", "pi:x", "pi:x^2 + y", "comp:[x, y]", "mono:[1,-1]"})
    CHECK(cli::parse_valuation(r, cli::parse_valuation(r, d).descriptor()).descriptor() ==
          cli::parse_valuation(r, d).descriptor());
  CHECK(cli::parse_valuation(r, "comp:[x, y]").rank() == 2);
  CHECK(cli::parse_valuation(r, "deg").rank() == 1);
  CHECK_THROWS_AS(cli::parse_valuation(r, "adic:x"), Error);
  Functional f = cli::parse_functional(r, "2@comp:[x,y]#1; pi:y");
  CHECK(f(parse_expr("y", r)) == 3);
  CHECK(f(parse_expr("x", r)) == 0);
  K2Class c = cli::parse_symbol(r, "2*{x, y} - {x, 1-x}");
  CHECK(c.terms().size() == 2);
  CHECK(c.terms()[1].coef == -1);
  CHECK_THROWS_AS(cli::parse_symbol(r, "{x}"), Error);
  CHECK_THROWS_AS(cli::parse_symbol(r, "{x, y} {x, y}"), Error);
}

TEST_CASE("reports and exit codes") {
  auto a = run(R"~(k2zero --field "F3(t)" --symbol "{t, t-1}")~");
  CHECK(a.exit_code == 0);
  Json j = Json::parse(a.json);
  CHECK(j["schema"] == 1);
  CHECK(j["verdict"] == "NonZero");
  CHECK(j["certificates"]["residues"]["pi:t"] == "2");
  CHECK(numbers_are_strings(j));

  auto b = run(R"~(depend --field "F5(x,y)" --elems x "x^2+1")~");
  CHECK(Json::parse(b.json)["certificates"]["relation"] == "b - a^2 - 1");

  auto p = run(R"~(probe --field "Q(t)" --elem t)~");
  Json pj = Json::parse(p.json);
  CHECK(pj["certificates"]["chain"].back() == "2");
  CHECK(numbers_are_strings(pj));

  CHECK(run("k2zero --field Q(t)").exit_code == 1);
  CHECK(run("frobnicate --field Q").exit_code == 1);
  auto e = run(R"~(depend --field "Q(x)" --elems "x +")~");
  CHECK(e.exit_code == 1);
  CHECK(Json::parse(e.json)["error"]["kind"] == "SyntaxError");
  auto z = run(R"~(depend --field "F5(t)" --elems 5)~");
  CHECK(Json::parse(z.json)["error"]["kind"] == "ZeroElement");

  // Every subcommand reaches a verdict on a small input.
  for (const auto& line : {R"~(witness --field "F5(t,u)" --funcs "comp:[t,u]#0" "comp:[t,u]#1")~",
                           R"~(trdeg --field "F5(x,y,z)" --d 2)~", R"~(lattice --field "F5(x,y)" --nodes "" x y)~",
                           R"~(member --field "F5(x,y)" --elem y --gens x)~",
                           R"~(visible --field "F5(t,u)" --valuation pi:t)~", R"~(alt --field "Q(t)" --f pi:t --g pi:t)~",
                           R"~(minval --field "F5(x,y)" --funcs "comp:[x,y]#0")~", R"~(acl --field "F5(x,y)" --gens "x^2")~",
                           R"~(closure --field "F5(x,y)" --seed x --rounds 1)~",
                           R"~(wedge --field "Q(x,y)" --valuation "comp:[x,y]" --elems x y)~",
                           R"~(residues --field "F5(t)" --symbol "{t, t+1}")~"}) {
    auto r = run(line);
    CAPTURE(line);
    CHECK(r.exit_code == 0);
    CHECK(numbers_are_strings(Json::parse(r.json)));
  }
}

TEST_CASE("batch mode is line-oriented and deterministic") {
  std::string cmds =
      "# header\n"
      "k2zero --field \"F3(t)\" --symbol \"{t, t-1}\"\n"
      "\n"
      "depend --field \"F5(x,y)\" --elems x y\n"
      "k2zero --field Q --symbol \"{2, 3}\"\n";
  std::istringstream in1(cmds), in2(cmds);
  std::ostringstream out1, out2;
  CHECK(cli::run_batch(in1, out1, cli::Config{}) == 0);
  cli::Config serial;
  serial.parallel = false;
  CHECK(cli::run_batch(in2, out2, serial) == 0);
  CHECK(out1.str() == out2.str());
  std::istringstream lines(out1.str());
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    CHECK(Json::parse(line)["schema"] == 1);
    ++n;
  }
  CHECK(n == 3);
  std::istringstream bad("k2zero --field Q --symbol \"{2,\"\ndepend --field Q(x) --elems x\n");
  std::ostringstream out3;
  CHECK(cli::run_batch(bad, out3, cli::Config{}) == 1);
}
