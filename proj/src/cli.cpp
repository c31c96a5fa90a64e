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

#include "milnork/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "milnork/dependence.hpp"
#include "milnork/errors.hpp"
#include "milnork/parse.hpp"

namespace milnork::cli {

using Json = nlohmann::ordered_json;

// ---- config ----

namespace {

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(ErrorKind::UsageError, "config key " + key + " expects a boolean, got '" + v + "'");
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    long x = std::stol(v, &pos);
    if (pos != v.size() || x < 0) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    fail(ErrorKind::UsageError, "config key " + key + " expects a non-negative integer, got '" + v + "'");
  }
}

}  // namespace

void Config::set(const std::string& key, const std::string& value) {
  if (key == "steinberg_budget") steinberg_budget = parse_long(key, value);
  else if (key == "witness_pool") witness_pool = static_cast<std::size_t>(parse_long(key, value));
  else if (key == "closure_rounds") closure_rounds = static_cast<std::size_t>(parse_long(key, value));
  else if (key == "closure_max_candidates") closure_max_candidates = static_cast<std::size_t>(parse_long(key, value));
  else if (key == "max_var_degree") max_var_degree = static_cast<int>(parse_long(key, value));
  else if (key == "parallel") parallel = parse_bool(key, value);
  else if (key == "timings") timings = parse_bool(key, value);
  else fail(ErrorKind::UsageError, "unknown config key '" + key + "'");
}

Config Config::parse(std::string_view text) {
  Config c;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) fail(ErrorKind::UsageError, "config line " + std::to_string(lineno) + ": expected key = value");
    c.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::UsageError, "cannot read config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

// ---- text formats ----

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  bool in_word = false;
  char quote = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quote) {
      if (ch == quote) quote = 0;
      else if (ch == '\\' && quote == '"' && i + 1 < line.size()) cur += line[++i];
      else cur += ch;
    } else if (ch == '"' || ch == '\'') {
      quote = ch;
      in_word = true;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      if (in_word) out.push_back(cur);
      cur.clear();
      in_word = false;
    } else if (ch == '\\' && i + 1 < line.size()) {
      cur += line[++i];
      in_word = true;
    } else {
      cur += ch;
      in_word = true;
    }
  }
  if (quote) fail(ErrorKind::UsageError, "unterminated quote");
  if (in_word) out.push_back(cur);
  return out;
}

namespace {

std::string inner(std::string_view s, std::string_view prefix) {
  std::string t = trim(s.substr(prefix.size()));
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    fail(ErrorKind::SyntaxError, "expected [..] after " + std::string(prefix));
  return t.substr(1, t.size() - 2);
}

std::vector<long> int_list(const std::string& s) {
  std::vector<long> out;
  for (const auto& p : split_top_level(s, ',')) {
    try {
      out.push_back(std::stol(p));
    } catch (const std::exception&) {
      fail(ErrorKind::SyntaxError, "expected an integer, got '" + p + "'");
    }
  }
  return out;
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

Valuation parse_valuation(const RingPtr& ring, std::string_view text) {
  std::string s = trim(text);
  if (s == "trivial") return Valuation::trivial(ring);
  if (s == "deg") return Valuation::degree_place(ring);
  if (starts_with(s, "deg:")) {
    std::vector<std::size_t> vars;
    for (const auto& v : split_top_level(inner(s, "deg:"), ',')) {
      auto it = std::find(ring->vars.begin(), ring->vars.end(), v);
      if (it == ring->vars.end()) fail(ErrorKind::UnknownVariable, "unknown variable " + v);
      vars.push_back(static_cast<std::size_t>(it - ring->vars.begin()));
    }
    return Valuation::degree_place(ring, vars);
  }
  if (starts_with(s, "mono:")) return Valuation::monomial(ring, {int_list(inner(s, "mono:"))});
  if (starts_with(s, "prime:")) return Valuation::rational_prime(ring, mpz_class(trim(s.substr(6))));
  if (starts_with(s, "pi:")) return Valuation::pi_adic(parse_poly(s.substr(3), ring));
  if (starts_with(s, "comp:")) {
    auto items = split_top_level(inner(s, "comp:"), ',');
    if (!items.empty() && starts_with(items[0], "mono:")) {
      std::vector<std::vector<long>> rows;
      for (const auto& it : items) {
        if (!starts_with(it, "mono:")) fail(ErrorKind::SyntaxError, "mixed composite descriptors are not supported");
        rows.push_back(int_list(inner(it, "mono:")));
      }
      return Valuation::monomial(ring, rows);
    }
    std::vector<RatFunc> seq;
    for (const auto& it : items) seq.push_back(parse_expr(it, ring));
    return Valuation::composite(ring, seq);
  }
  fail(ErrorKind::SyntaxError, "unrecognized valuation descriptor '" + s + "'");
}

Functional parse_functional(const RingPtr& ring, std::string_view text) {
  Functional f(ring);
  for (const auto& term : split_top_level(text, ';')) {
    std::string t = term;
    mpq_class coef = 1;
    if (auto at = t.find('@'); at != std::string::npos) {
      coef = parse_rational(trim(t.substr(0, at)));
      t = trim(t.substr(at + 1));
    }
    std::size_t index = 0;
    if (auto h = t.rfind('#'); h != std::string::npos) {
      try {
        index = std::stoul(t.substr(h + 1));
      } catch (const std::exception&) {
        fail(ErrorKind::SyntaxError, "bad coordinate index in '" + term + "'");
      }
      t = trim(t.substr(0, h));
    }
    f = f + Functional::coordinate(parse_valuation(ring, t), index).scaled(coef);
  }
  return f;
}

K2Class parse_symbol(const RingPtr& ring, std::string_view text) {
  K2Class c(ring);
  std::string s(text);
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    std::size_t open = s.find('{', i);
    if (open == std::string::npos) {
      if (!trim(s.substr(i)).empty()) fail(ErrorKind::SyntaxError, "trailing text at offset " + std::to_string(i));
      break;
    }
    // Coefficient text such as "", "+", "- 2*", "3*".
    std::string pre = trim(s.substr(i, open - i));
    long sign = 1, k = 1;
    if (!pre.empty() && (pre[0] == '+' || pre[0] == '-')) {
      sign = pre[0] == '-' ? -1 : 1;
      pre = trim(pre.substr(1));
    } else if (any) {
      fail(ErrorKind::SyntaxError, "expected + or - at offset " + std::to_string(i));
    }
    if (!pre.empty()) {
      if (pre.back() != '*') fail(ErrorKind::SyntaxError, "expected '*' before '{' at offset " + std::to_string(open));
      try {
        k = std::stol(pre.substr(0, pre.size() - 1));
      } catch (const std::exception&) {
        fail(ErrorKind::SyntaxError, "bad coefficient at offset " + std::to_string(i));
      }
    }
    int depth = 0;
    std::size_t close = open;
    for (; close < s.size(); ++close) {
      if (s[close] == '{') ++depth;
      if (s[close] == '}' && --depth == 0) break;
    }
    if (close >= s.size()) fail(ErrorKind::SyntaxError, "unbalanced '{' at offset " + std::to_string(open));
    auto parts = split_top_level(s.substr(open + 1, close - open - 1), ',');
    if (parts.size() != 2) fail(ErrorKind::SyntaxError, "a symbol has two entries, at offset " + std::to_string(open));
    c.add(parse_expr(parts[0], ring), parse_expr(parts[1], ring), sign * k);
    any = true;
    i = close + 1;
  }
  if (!any) fail(ErrorKind::SyntaxError, "no symbol found");
  return c;
}

namespace {

// ---- report helpers ----

std::string ring_text(const RingPtr& ring) {
  std::string s = ring->field.name();
  if (ring->vars.empty()) return s;
  s += "(";
  for (std::size_t i = 0; i < ring->vars.size(); ++i) s += (i ? "," : "") + ring->vars[i];
  return s + ")";
}

Json str_matrix(const linalg::QMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    a.push_back(r);
  }
  return a;
}

Json value_json(const ValueVec& v) {
  Json a = Json::array();
  for (long x : v) a.push_back(std::to_string(x));
  return a;
}

Json space_json(const FunctionalSpace& s) {
  Json a = Json::array();
  for (const auto& f : s.basis()) a.push_back(f.to_string());
  return a;
}

std::vector<RatFunc> parse_list(const RingPtr& ring, const std::vector<std::string>& xs) {
  std::vector<RatFunc> out;
  for (const auto& x : xs) out.push_back(parse_expr(x, ring));
  return out;
}

std::vector<std::string> texts(const std::vector<RatFunc>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

}  // namespace

namespace {

SubgroupSpec parse_subgroup(const RingPtr& ring, const std::string& text) {
  std::string s = trim(text);
  if (s.empty() || s == "constants") return SubgroupSpec::constants();
  if (s == "trivial") return SubgroupSpec::trivial();
  if (starts_with(s, "units:")) return SubgroupSpec::units_of(parse_valuation(ring, s.substr(6)));
  if (starts_with(s, "principal:")) return SubgroupSpec::principal_units_of(parse_valuation(ring, s.substr(10)));
  fail(ErrorKind::SyntaxError, "unrecognized subgroup '" + s + "'");
}

std::vector<Functional> parse_funcs(const RingPtr& ring, const std::vector<std::string>& xs) {
  std::vector<Functional> out;
  for (const auto& x : xs) out.push_back(parse_functional(ring, x));
  return out;
}

std::vector<Valuation> parse_vals(const RingPtr& ring, const std::vector<std::string>& xs) {
  std::vector<Valuation> out;
  for (const auto& x : xs) out.push_back(parse_valuation(ring, x));
  return out;
}

std::vector<RatFunc> parse_gens(const RingPtr& ring, const std::string& s) {
  std::vector<RatFunc> out;
  for (const auto& g : split_top_level(s, ';'))
    if (!trim(g).empty()) out.push_back(parse_expr(g, ring));
  return out;
}

Json functional_texts(const std::vector<Functional>& fs) {
  Json a = Json::array();
  for (const auto& f : fs) a.push_back(f.to_string());
  return a;
}

// Options shared by every subcommand; each handler reads what it registered.
struct Opts {
  std::string field, symbol, valuation, f, g, modulus, subgroup, gens, elem;
  std::vector<std::string> valuations, elems, funcs, ambient, pool, seed, nodes;
  long budget = -1, rounds = -1, pool_size = -1, d = -1;
};

struct Report {
  std::string verdict;
  Json inputs = Json::object();
  Json certs = Json::object();
  bool unknown = false;
};

using Handler = std::function<Report(const RingPtr&, const Opts&, const Config&)>;

WitnessPolicy policy_of(const Opts& o, const Config& c) {
  return {o.pool_size >= 0 ? static_cast<std::size_t>(o.pool_size) : c.witness_pool, c.parallel};
}

EliminationOptions elim_of(const Config& c) {
  EliminationOptions e;
  e.max_var_degree = c.max_var_degree;
  return e;
}

ClosureOptions closure_of(const Opts& o, const Config& c) {
  ClosureOptions co;
  co.rounds = o.rounds >= 0 ? static_cast<std::size_t>(o.rounds) : c.closure_rounds;
  co.max_candidates = c.closure_max_candidates;
  co.parallel = c.parallel;
  return co;
}

Report cmd_residues(const RingPtr& ring, const Opts& o, const Config&) {
  Report r;
  K2Class c = parse_symbol(ring, o.symbol);
  r.inputs["symbol"] = c.to_string();
  std::vector<Valuation> vals = parse_vals(ring, o.valuations);
  if (vals.empty())
    for (const auto& p : c.irreducibles()) vals.push_back(Valuation::pi_adic(p));
  Json rows = Json::array();
  bool all_one = true;
  for (const auto& v : vals) {
    Residue res = tame_symbol(v, c);
    all_one = all_one && res.is_one();
    Json row;
    row["valuation"] = v.descriptor();
    row["residue"] = res.to_string();
    if (v.rank() == 1 && v.levels()[0].kind == Level::Kind::Finite)
      row["norm"] = residue_norm(res).get_str();
    rows.push_back(row);
  }
  r.inputs["valuations"] = Json::array();
  for (const auto& v : vals) r.inputs["valuations"].push_back(v.descriptor());
  r.certs["residues"] = rows;
  r.verdict = all_one ? "AllTrivial" : "NonTrivial";
  return r;
}

Report cmd_k2zero(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  K2Class c = parse_symbol(ring, o.symbol);
  long budget = o.budget >= 0 ? o.budget : cfg.steinberg_budget;
  r.inputs["symbol"] = c.to_string();
  r.inputs["budget"] = std::to_string(budget);
  K2Verdict v = k2_zero(c, budget);
  r.verdict = v.outcome == K2Verdict::Outcome::Zero      ? "Zero"
              : v.outcome == K2Verdict::Outcome::NonZero ? "NonZero"
                                                         : "Unknown";
  r.unknown = v.outcome == K2Verdict::Outcome::Unknown;
  r.certs["method"] = v.method;
  r.certs["residues"] = Json::object();
  for (const auto& [k, s] : v.residues) r.certs["residues"][k] = s;
  if (v.has_constant_part || !v.prime_residues.empty() || v.hilbert2 != 1) {
    r.certs["hilbert2"] = std::to_string(v.hilbert2);
    r.certs["prime_residues"] = Json::object();
    for (const auto& [k, s] : v.prime_residues) r.certs["prime_residues"][k] = s;
  }
  if (!v.specialization.empty()) r.certs["specialization"] = v.specialization;
  if (!v.wedge_valuation.empty()) r.certs["wedge_valuation"] = v.wedge_valuation;
  if (!v.notes.empty()) r.certs["notes"] = v.notes;
  return r;
}

Report cmd_wedge(const RingPtr& ring, const Opts& o, const Config&) {
  Report r;
  Valuation v = parse_valuation(ring, o.valuation);
  auto elems = parse_list(ring, o.elems);
  r.inputs["valuation"] = v.descriptor();
  r.inputs["elems"] = texts(elems);
  ModUnitsWedge w = wedge_mod_units(v, elems);
  r.verdict = w.zero ? "Zero" : "NonZero";
  r.certs["wedge"] = w.to_string();
  r.certs["vectors"] = str_matrix(w.vectors);
  r.certs["value_rank"] = std::to_string(w.value_rank);
  Json minors = Json::array();
  for (const auto& [cols, det] : w.minors) {
    Json m;
    Json cs = Json::array();
    for (auto c : cols) cs.push_back(std::to_string(c));
    m["columns"] = cs;
    m["det"] = det.get_str();
    minors.push_back(m);
  }
  r.certs["minors"] = minors;
  return r;
}

Report cmd_alt(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  Functional f = parse_functional(ring, o.f), g = parse_functional(ring, o.g);
  r.inputs["f"] = f.to_string();
  r.inputs["g"] = g.to_string();
  AlternatingVerdict v = decide_alternating(f, g, policy_of(o, cfg));
  r.verdict = v.outcome == AlternatingVerdict::Outcome::Holds  ? "Holds"
              : v.outcome == AlternatingVerdict::Outcome::Fails ? "Fails"
                                                                : "Unknown";
  r.unknown = v.outcome == AlternatingVerdict::Outcome::Unknown;
  r.certs["reason"] = v.reason;
  if (v.outcome == AlternatingVerdict::Outcome::Fails) {
    r.certs["x"] = v.x.to_string();
    r.certs["y"] = v.y.to_string();
    r.certs["defect"] = v.defect.get_str();
  }
  r.certs["witnesses_tried"] = std::to_string(v.witnesses_tried);
  return r;
}

Report cmd_minval(const RingPtr& ring, const Opts& o, const Config&) {
  Report r;
  auto fs = parse_funcs(ring, o.funcs);
  r.inputs["funcs"] = functional_texts(fs);
  auto I = FunctionalSpace::span(ring, fs);
  Valuation v = minimal_valuation(I);
  r.verdict = "Valuative";
  r.certs["valuation"] = v.descriptor();
  r.certs["rank"] = std::to_string(v.rank());
  r.certs["dim"] = std::to_string(I.dim());
  return r;
}

Report cmd_visible(const RingPtr& ring, const Opts& o, const Config&) {
  Report r;
  Valuation v = parse_valuation(ring, o.valuation);
  SubgroupSpec T = parse_subgroup(ring, o.subgroup);
  std::vector<Functional> amb = parse_funcs(ring, o.ambient);
  if (amb.empty())
    for (std::size_t i = 0; i < v.rank(); ++i) amb.push_back(Functional::coordinate(v, i));
  r.inputs["valuation"] = v.descriptor();
  r.inputs["subgroup"] = T.to_string();
  r.inputs["ambient"] = functional_texts(amb);
  VisibilityVerdict vv = visibility_check(v, T, FunctionalSpace::span(ring, amb));
  r.verdict = vv.visible ? "Visible" : "NotCertified";
  r.certs["reason"] = vv.reason;
  r.certs["trace"] = vv.trace;
  return r;
}

Report cmd_witness(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  auto fs = parse_funcs(ring, o.funcs);
  auto pool = parse_vals(ring, o.pool);
  for (const auto& f : fs)
    for (const auto& a : f.atoms()) pool.push_back(a.v);
  r.inputs["funcs"] = functional_texts(fs);
  r.inputs["pool"] = Json::array();
  for (const auto& v : parse_vals(ring, o.pool)) r.inputs["pool"].push_back(v.descriptor());
  auto D = FunctionalSpace::span(ring, fs);
  WitnessingValuation w = find_witnessing_valuation(D, pool, policy_of(o, cfg));
  r.verdict = "Witnessed";
  r.certs["valuation"] = w.v.descriptor();
  r.certs["inertia"] = space_json(w.I);
  r.certs["codim"] = std::to_string(w.codim);
  return r;
}

Report cmd_closure(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  auto seed = parse_list(ring, o.seed);
  SubgroupSpec T = parse_subgroup(ring, o.modulus);
  std::optional<std::vector<RatFunc>> pool;
  if (!o.pool.empty()) pool = parse_list(ring, o.pool);
  ClosureOptions co = closure_of(o, cfg);
  r.inputs["seed"] = texts(seed);
  r.inputs["modulus"] = T.to_string();
  r.inputs["rounds"] = std::to_string(co.rounds);
  if (pool) r.inputs["pool"] = texts(*pool);
  MilnorClosedApprox m = milnor_closure(ring, seed, T, pool, co);
  r.verdict = m.budget_exceeded ? "BudgetExceeded" : "Approximated";
  r.unknown = m.budget_exceeded;
  r.certs["dim"] = std::to_string(m.dim());
  Json basis = Json::array();
  for (const auto& b : m.basis) basis.push_back(b.to_string());
  r.certs["basis"] = basis;
  Json members = Json::array();
  for (const auto& d : m.members) members.push_back(d.to_string(ring->field));
  r.certs["members"] = members;
  r.certs["rounds_used"] = std::to_string(m.rounds_used);
  r.certs["frontier"] = std::to_string(m.frontier.size());
  return r;
}

Report cmd_depend(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  auto elems = parse_list(ring, o.elems);
  r.inputs["elems"] = texts(elems);
  DependenceVerdict v = dependence_decide(elems, elim_of(cfg));
  if (v.outcome == DependenceVerdict::Outcome::Independent) {
    r.verdict = "Independent";
    r.certs["valuation"] = v.valuation.descriptor();
    r.certs["wedge"] = v.wedge.to_string();
  } else {
    r.verdict = "Dependent";
    r.certs["names"] = element_names(ring, elems.size());
    r.certs["relation"] = v.relation_text;
  }
  r.certs["verified"] = verify_dependence(elems, v);
  return r;
}

Report cmd_acl(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  auto gens = parse_gens(ring, o.gens);
  r.inputs["gens"] = texts(gens);
  SubfieldDesc L = relative_algebraic_closure(ring, gens, {}, elim_of(cfg));
  r.verdict = L.relatively_closed ? "Closed" : "Partial";
  r.certs["subfield"] = L.to_string();
  r.certs["generators"] = texts(L.generators);
  r.certs["basis"] = texts(L.basis);
  r.certs["trdeg"] = std::to_string(L.trdeg());
  if (!L.closure_note.empty()) r.certs["note"] = L.closure_note;
  return r;
}

Report cmd_lattice(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  std::vector<SubfieldDesc> nodes;
  Json in = Json::array();
  for (const auto& n : o.nodes) {
    auto gens = parse_gens(ring, n);
    in.push_back(texts(gens));
    nodes.push_back(relative_algebraic_closure(ring, gens, {}, elim_of(cfg)));
  }
  r.inputs["nodes"] = in;
  GeomLattice g = geometric_lattice(nodes, elim_of(cfg));
  r.verdict = g.embedding_holds ? "Embedded" : "NotEmbedded";
  Json names = Json::array();
  for (const auto& n : g.nodes) names.push_back(n.to_string());
  r.certs["nodes"] = names;
  auto bits = [](const std::vector<std::vector<bool>>& m) {
    Json a = Json::array();
    for (const auto& row : m) {
      std::string s;
      for (bool b : row) s += b ? '1' : '0';
      a.push_back(s);
    }
    return a;
  };
  auto ints = [](const std::vector<std::vector<int>>& m) {
    Json a = Json::array();
    for (const auto& row : m) {
      Json rr = Json::array();
      for (int x : row) rr.push_back(std::to_string(x));
      a.push_back(rr);
    }
    return a;
  };
  r.certs["order"] = bits(g.order);
  r.certs["kcal_order"] = bits(g.kcal_order);
  r.certs["meet"] = ints(g.meet);
  r.certs["join"] = ints(g.join);
  r.certs["hasse"] = g.hasse();
  return r;
}

Report cmd_member(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  RatFunc x = parse_expr(o.elem, ring);
  auto gens = parse_gens(ring, o.gens);
  r.inputs["elem"] = x.to_string();
  r.inputs["gens"] = texts(gens);
  SubfieldDesc L = relative_algebraic_closure(ring, gens, {}, elim_of(cfg));
  KVector kx = KVector::of(x);
  MembershipVerdict m = geometric_membership(kx, L, elim_of(cfg));
  r.certs["subfield"] = L.to_string();
  if (m.in_L) {
    r.verdict = "InL";
    r.certs["lift"] = m.lift.to_string();
    r.certs["multiple"] = std::to_string(m.multiple);
  } else {
    r.verdict = "NotInL";
    r.certs["valuation"] = m.valuation.descriptor();
    r.certs["value"] = value_json(m.value);
    r.certs["verified"] = verify_exclusion(kx, L, m);
  }
  r.certs["trace"] = m.trace;
  return r;
}

Report cmd_trdeg(const RingPtr& ring, const Opts& o, const Config&) {
  Report r;
  if (o.d < 0) fail(ErrorKind::UsageError, "trdeg needs --d");
  r.inputs["d"] = std::to_string(o.d);
  TrdegCertificate c = trdeg_certificate(ring, static_cast<std::size_t>(o.d));
  r.verdict = c.conditions_hold ? "Certified" : "NotCertified";
  r.certs["valuation"] = c.valuation.descriptor();
  r.certs["split"] = c.split;
  r.certs["D"] = space_json(c.D);
  r.certs["center_dim"] = std::to_string(c.center.dim());
  r.certs["ambient_dim"] = std::to_string(c.ambient.dim());
  r.certs["recovered_d"] = std::to_string(verify_trdeg(c));
  return r;
}

Report cmd_probe(const RingPtr& ring, const Opts& o, const Config& cfg) {
  Report r;
  RatFunc t = parse_expr(o.elem, ring);
  r.inputs["elem"] = t.to_string();
  ProbeReport p = prime_subfield_probe(t, closure_of(o, cfg));
  r.verdict = p.torsion ? "Torsion" : p.two_in_closure ? "Reached" : p.excluding ? "Excluded" : "Unknown";
  r.unknown = r.verdict == "Unknown";
  r.certs["characteristic_zero"] = p.characteristic_zero;
  r.certs["chain"] = texts(p.chain);
  Json cert = Json::array();
  for (bool b : p.chain_certified) cert.push_back(b);
  r.certs["chain_certified"] = cert;
  r.certs["derivations"] = p.derivations;
  r.certs["two_in_closure"] = p.two_in_closure;
  if (p.excluding) {
    r.certs["excluding"] = p.excluding->descriptor();
    r.certs["excluding_value"] = value_json(p.excluding_value);
  }
  if (!p.note.empty()) r.certs["note"] = p.note;
  return r;
}

int exit_for(ErrorKind k) {
  // Resource limits and missing certificates leave the question open.
  return k == ErrorKind::CertificateNotFound || k == ErrorKind::BudgetExceeded || k == ErrorKind::UndecidedPair ||
                 k == ErrorKind::DegreeCapExceeded
             ? 2
             : 1;
}

Json error_json(const std::string& command, std::string_view kind, const std::string& msg) {
  Json j;
  j["schema"] = 1;
  j["command"] = command;
  j["error"] = {{"kind", std::string(kind)}, {"message", msg}};
  return j;
}

}  // namespace

Result run_command(const std::vector<std::string>& args, const Config& cfg, bool pretty) {
  auto dump = [&](const Json& j) { return pretty ? j.dump(2) : j.dump(); };
  std::string command = args.empty() ? "" : args[0];
  try {
    CLI::App app{"milnork"};
    app.require_subcommand(1, 1);
    Opts o;
    std::map<std::string, Handler> handlers = {
        {"residues", cmd_residues}, {"k2zero", cmd_k2zero},   {"wedge", cmd_wedge},     {"alt", cmd_alt},
        {"minval", cmd_minval},     {"visible", cmd_visible}, {"witness", cmd_witness}, {"closure", cmd_closure},
        {"depend", cmd_depend},     {"acl", cmd_acl},         {"lattice", cmd_lattice}, {"member", cmd_member},
        {"trdeg", cmd_trdeg},       {"probe", cmd_probe}};
    auto sub = [&](const char* name, const char* help) {
      auto* s = app.add_subcommand(name, help);
      s->add_option("--field", o.field, "field such as Q(x,y) or F5(t)")->required();
      return s;
    };
    auto* s = sub("residues", "tame symbols of a K2 class");
    s->add_option("--symbol", o.symbol)->required();
    s->add_option("--valuation", o.valuations);
    s = sub("k2zero", "decide whether a K2 class vanishes");
    s->add_option("--symbol", o.symbol)->required();
    s->add_option("--budget", o.budget);
    s = sub("wedge", "wedge of value vectors modulo units");
    s->add_option("--valuation", o.valuation)->required();
    s->add_option("--elems", o.elems)->required();
    s = sub("alt", "decide the alternating condition for a pair");
    s->add_option("--f", o.f)->required();
    s->add_option("--g", o.g)->required();
    s->add_option("--pool-size", o.pool_size);
    s = sub("minval", "minimal valuation of an inertia-type space");
    s->add_option("--funcs", o.funcs)->required();
    s = sub("visible", "visibility of a valuation");
    s->add_option("--valuation", o.valuation)->required();
    s->add_option("--subgroup", o.subgroup);
    s->add_option("--ambient", o.ambient);
    s = sub("witness", "find a witnessing valuation");
    s->add_option("--funcs", o.funcs)->required();
    s->add_option("--pool", o.pool);
    s->add_option("--pool-size", o.pool_size);
    s = sub("closure", "bounded Milnor closure");
    s->add_option("--seed", o.seed)->required();
    s->add_option("--modulus", o.modulus);
    s->add_option("--rounds", o.rounds);
    s->add_option("--pool", o.pool);
    s = sub("depend", "algebraic dependence");
    s->add_option("--elems", o.elems)->required();
    s = sub("acl", "relative algebraic closure");
    s->add_option("--gens", o.gens)->required();
    s = sub("lattice", "lattice of closed subfields");
    s->add_option("--nodes", o.nodes)->required();
    s = sub("member", "geometric membership");
    s->add_option("--elem", o.elem)->required();
    s->add_option("--gens", o.gens)->required();
    s = sub("trdeg", "transcendence degree certificate");
    s->add_option("--d", o.d)->required();
    s = sub("probe", "prime subfield probe");
    s->add_option("--elem", o.elem)->required();
    s->add_option("--rounds", o.rounds);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      auto subs = app.get_subcommands();
      return {0, subs.empty() ? app.help() : subs.front()->help()};
    } catch (const CLI::ParseError& e) {
      return {1, dump(error_json(command, "UsageError", e.what()))};
    }
    command = app.get_subcommands().front()->get_name();
    auto t0 = std::chrono::steady_clock::now();
    RingPtr ring = parse_field(o.field);
    Report r = handlers.at(command)(ring, o, cfg);
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    Json inputs;
    inputs["field"] = ring_text(ring);
    for (auto& [k, v] : r.inputs.items()) inputs[k] = v;
    j["inputs"] = inputs;
    j["verdict"] = r.verdict;
    j["certificates"] = r.certs;
    if (cfg.timings) {
      auto ms = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
      j["timings"] = {{"elapsed_us", std::to_string(ms)}};
    }
    return {r.unknown ? 2 : 0, dump(j)};
  } catch (const Error& e) {
    return {exit_for(e.kind()), dump(error_json(command, error_kind_name(e.kind()), e.what()))};
  } catch (const std::exception& e) {
    return {1, dump(error_json(command, "InternalError", e.what()))};
  }
}

namespace {

int worse(int a, int b) {
  auto rank = [](int c) { return c == 1 ? 2 : c == 2 ? 1 : 0; };
  return rank(b) > rank(a) ? b : a;
}

}  // namespace

int run_batch(std::istream& in, std::ostream& out, const Config& cfg) {
  int worst = 0;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    Result r;
    try {
      r = run_command(split_words(t), cfg, false);
    } catch (const Error& e) {
      r = {1, error_json("", error_kind_name(e.kind()), e.what()).dump()};
    }
    out << r.json << '\n';
    worst = worse(worst, r.exit_code);
  }
  out.flush();
  return worst;
}

int main(int argc, char** argv) {
  static const char* usage =
      "usage: milnork [--config FILE] [--set key=value]... [--compact] [--timings] [--serial]\n"
      "               <subcommand> --field F [options]   or   batch < commands.txt\n"
      "subcommands: residues k2zero wedge alt minval visible witness closure depend acl\n"
      "             lattice member trdeg probe\n";
  std::vector<std::string> args(argv + 1, argv + argc);
  Config cfg;
  std::vector<std::pair<std::string, std::string>> overrides;
  bool compact = false;
  std::size_t i = 0;
  try {
    for (; i < args.size() && starts_with(args[i], "--"); ++i) {
      const std::string& a = args[i];
      if (a == "--help") {
        std::cout << usage;
        return 0;
      } else if (a == "--config" && i + 1 < args.size()) {
        cfg = Config::load(args[++i]);
      } else if (a == "--set" && i + 1 < args.size()) {
        auto kv = args[++i];
        auto eq = kv.find('=');
        if (eq == std::string::npos) fail(ErrorKind::UsageError, "--set expects key=value");
        overrides.emplace_back(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
      } else if (a == "--compact") {
        compact = true;
      } else if (a == "--timings") {
        overrides.emplace_back("timings", "true");
      } else if (a == "--serial") {
        overrides.emplace_back("parallel", "false");
      } else {
        fail(ErrorKind::UsageError, "unknown global option " + a);
      }
    }
    // Flags win over the config file regardless of their order.
    for (const auto& [k, v] : overrides) cfg.set(k, v);
  } catch (const Error& e) {
    std::cout << error_json("", error_kind_name(e.kind()), e.what()).dump(2) << '\n';
    return 1;
  }
  std::vector<std::string> rest(args.begin() + static_cast<long>(i), args.end());
  if (rest.empty()) {
    std::cerr << usage;
    return 1;
  }
  if (rest[0] == "batch") return run_batch(std::cin, std::cout, cfg);
  Result r = run_command(rest, cfg, !compact);
  std::cout << r.json << '\n';
  return r.exit_code;
}

}  // namespace milnork::cli
