/*
   Copyright 2026 The modalg Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "job.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "modalg/pv.hpp"

namespace modalg::cli {

namespace {

const std::vector<std::string> kTasks = {"verify-action", "expand",   "hull",      "relations",  "lieritt-solve",
                                         "umemura",       "pv-verify", "pv-hopf", "pv-compare", "lie-dim"};

void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) throw schema_error(where + " must be an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw schema_error("unknown field '" + where + "." + k + "'");
}

const json& need(const json& j, const std::string& where, const std::string& key) {
  if (!j.contains(key)) throw schema_error("missing field '" + where + "." + key + "'");
  return j.at(key);
}

std::string as_string(const json& j, const std::string& where) {
  if (!j.is_string()) throw schema_error(where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> as_strings(const json& j, const std::string& where) {
  if (!j.is_array()) throw schema_error(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, where));
  return out;
}

std::map<std::string, std::string> as_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw schema_error(where + " must be an object of strings");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = as_string(v, where + "." + k);
  return out;
}

int as_int(const json& j, const std::string& where, int min) {
  if (!j.is_number_integer()) throw schema_error(where + " must be an integer");
  long v = j.get<long>();
  if (v < min || v > 1000000) throw schema_error(where + " must be >= " + std::to_string(min));
  return static_cast<int>(v);
}

struct Bounds {
  int horizon = 4;
  int degree = 1;
  int diff_order = 2;
  int order = 3;
  int t_horizon = 6;
  int monoid_horizon = 4;
};

Bounds defaults(const std::string& task) {
  Bounds b;
  if (task == "verify-action") b.degree = 3;
  if (task == "pv-verify") b.degree = 3;
  if (task == "pv-hopf") b.degree = 4;
  if (task == "pv-compare" || task == "lie-dim") b.order = 2;
  return b;
}

Bounds parse_bounds(const std::string& task, const json& job, const Overrides& o) {
  Bounds b = defaults(task);
  if (job.contains("bounds")) {
    const json& j = job.at("bounds");
    only_keys(j, "bounds", {"horizon", "degree", "diff_order", "order", "t_horizon", "monoid_horizon"});
    if (j.contains("horizon")) b.horizon = as_int(j.at("horizon"), "bounds.horizon", 1);
    if (j.contains("degree")) b.degree = as_int(j.at("degree"), "bounds.degree", 1);
    if (j.contains("diff_order")) b.diff_order = as_int(j.at("diff_order"), "bounds.diff_order", 1);
    if (j.contains("order")) b.order = as_int(j.at("order"), "bounds.order", 1);
    if (j.contains("t_horizon")) b.t_horizon = as_int(j.at("t_horizon"), "bounds.t_horizon", 1);
    if (j.contains("monoid_horizon")) b.monoid_horizon = as_int(j.at("monoid_horizon"), "bounds.monoid_horizon", 1);
  }
  if (o.horizon) {
    if (*o.horizon < 1) throw schema_error("--horizon must be positive");
    b.horizon = *o.horizon;
  }
  if (o.degree) {
    if (*o.degree < 1) throw schema_error("--degree must be positive");
    b.degree = *o.degree;
  }
  return b;
}

json bounds_json(const Bounds& b) {
  return json{{"horizon", b.horizon},     {"degree", b.degree},       {"diff_order", b.diff_order},
              {"order", b.order},         {"t_horizon", b.t_horizon}, {"monoid_horizon", b.monoid_horizon}};
}

FieldDesc parse_field(const json& job) {
  const json& j = need(job, "job", "field");
  only_keys(j, "field", {"characteristic", "base", "generators", "laurent"});
  const int p = as_int(need(j, "field", "characteristic"), "field.characteristic", 0);
  if (p > 0 && !is_prime(static_cast<std::uint64_t>(p))) throw schema_error("field.characteristic must be 0 or a prime");
  std::vector<std::string> base = j.contains("base") ? as_strings(j.at("base"), "field.base") : std::vector<std::string>{};
  std::vector<std::string> gens = as_strings(need(j, "field", "generators"), "field.generators");
  std::set<std::string> seen;
  for (const auto& n : base) seen.insert(n);
  for (const auto& n : gens)
    if (!seen.insert(n).second) throw schema_error("duplicate variable '" + n + "'");
  FieldDesc f = FieldDesc::make(base, gens, static_cast<std::uint32_t>(p));
  if (j.contains("laurent"))
    for (const auto& n : as_strings(j.at("laurent"), "field.laurent")) {
      int v = f.vars->index(n);
      if (v < 0 || f.is_base(v)) throw schema_error("field.laurent: '" + n + "' is not a generator");
      f.laurent.push_back(v);
    }
  return f;
}

void check_names(const FieldDesc& f, const std::map<std::string, std::string>& images, const std::string& where) {
  for (const auto& [k, v] : images)
    if (f.vars->index(k) < 0) throw schema_error(where + ": unknown variable '" + k + "'");
}

MonoidKind monoid_kind(const std::string& s) {
  if (s == "End") return MonoidKind::End;
  if (s == "Aut") return MonoidKind::Aut;
  if (s == "Free") return MonoidKind::Free;
  throw schema_error("action.monoid must be one of End, Aut, Free");
}

ActionPtr parse_action(const json& job, const FieldDesc& f, const Bounds& b) {
  const json& j = need(job, "job", "action");
  if (!j.is_object()) throw schema_error("action must be an object");
  const std::string kind = as_string(need(j, "action", "kind"), "action.kind");
  if (kind == "trivial") {
    only_keys(j, "action", {"kind"});
    return trivial_action(f);
  }
  if (kind == "iterative" || kind == "derivation") {
    only_keys(j, "action", {"kind", "t", "images"});
    auto images = as_map(need(j, "action", "images"), "action.images");
    check_names(f, images, "action.images");
    std::vector<std::string> t = j.contains("t") ? as_strings(j.at("t"), "action.t") : std::vector<std::string>{"t"};
    if (t.empty()) throw schema_error("action.t must not be empty");
    for (const auto& n : t)
      if (f.vars->index(n) >= 0) throw schema_error("action.t: '" + n + "' clashes with a field variable");
    if (kind == "iterative") return iterative_action(f, t, images, b.t_horizon);
    if (t.size() != 1) throw schema_error("a derivation action takes exactly one t");
    return derivation_action(f, images, t[0], b.t_horizon);
  }
  if (kind == "monoid") {
    only_keys(j, "action", {"kind", "monoid", "generators"});
    MonoidKind mk = monoid_kind(as_string(need(j, "action", "monoid"), "action.monoid"));
    const json& gs = need(j, "action", "generators");
    if (!gs.is_array() || gs.empty()) throw schema_error("action.generators must be a non-empty array");
    std::vector<MonoidGen> gens;
    for (const auto& g : gs) {
      only_keys(g, "action.generators[]", {"name", "images", "inverse"});
      auto images = as_map(need(g, "action.generators[]", "images"), "action.generators[].images");
      check_names(f, images, "action.generators[].images");
      std::map<std::string, std::string> inv;
      if (g.contains("inverse")) {
        inv = as_map(g.at("inverse"), "action.generators[].inverse");
        check_names(f, inv, "action.generators[].inverse");
      }
      gens.push_back(make_gen(f, as_string(need(g, "action.generators[]", "name"), "action.generators[].name"),
                              images, mk, inv));
    }
    return monoid_action(f, mk, std::move(gens), b.monoid_horizon);
  }
  throw schema_error("action.kind must be one of trivial, iterative, derivation, monoid");
}

ExtensionDesc parse_extension(const json& job, const ActionPtr& a) {
  std::vector<std::string> u;
  if (job.contains("extension")) {
    const json& j = job.at("extension");
    only_keys(j, "extension", {"u"});
    u = as_strings(need(j, "extension", "u"), "extension.u");
  } else {
    for (int v : a->field.generators()) u.push_back(a->field.vars->name(v));
  }
  return make_extension(a, u);
}

PVData parse_pv(const json& job, const ActionPtr& a) {
  const json& j = need(job, "job", "pv");
  only_keys(j, "pv", {"X", "u"});
  const json& X = need(j, "pv", "X");
  if (!X.is_array() || X.empty()) throw schema_error("pv.X must be a non-empty array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : X) rows.push_back(as_strings(r, "pv.X[]"));
  std::vector<std::string> u = j.contains("u") ? as_strings(j.at("u"), "pv.u") : std::vector<std::string>{};
  return make_pv(a, rows, u);
}

json checks_json(const std::vector<PVCheck>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

json check_report(const CheckReport& r) {
  return {{"pass", r.pass}, {"law", r.law}, {"checked", r.checked}, {"witness", r.witness}};
}

json strings(const std::vector<std::string>& v) { return json(v); }

}  // namespace

bool known_task(const std::string& task) { return std::find(kTasks.begin(), kTasks.end(), task) != kTasks.end(); }

json run_job(const std::string& task, const json& job, const Overrides& o) {
  if (!known_task(task)) throw schema_error("unknown task '" + task + "'");
  only_keys(job, "job", {"schema", "task", "description", "field", "action", "extension", "pv", "lieritt", "expand",
                         "bounds"});
  if (as_string(need(job, "job", "schema"), "job.schema") != kJobSchema)
    throw schema_error(std::string("job.schema must be \"") + kJobSchema + "\"");
  if (job.contains("task") && as_string(job.at("task"), "job.task") != task)
    throw schema_error("job.task '" + job.at("task").get<std::string>() + "' does not match the requested task");
  if (job.contains("description")) as_string(job.at("description"), "job.description");
  const Bounds b = parse_bounds(task, job, o);
  const FieldDesc f = parse_field(job);
  const ActionPtr a = parse_action(job, f, b);

  json result = json::object();
  json witnesses = json::array();

  if (task == "verify-action") {
    CheckReport m = check_measuring(*a, b.degree), ma = check_module_algebra(*a, b.degree);
    result = {{"kind", a->kind_name()}, {"measuring", check_report(m)}, {"module_algebra", check_report(ma)}};
    for (const auto* r : {&m, &ma})
      if (!r->pass) witnesses.push_back(r->witness);
  } else if (task == "expand") {
    const json& j = need(job, "job", "expand");
    only_keys(j, "expand", {"elements"});
    HomCtxPtr ctx = make_hom_context(a, b.horizon, b.monoid_horizon);
    json ex = json::array();
    for (const auto& s : as_strings(need(j, "expand", "elements"), "expand.elements"))
      ex.push_back({{"element", s}, {"rho", taylor_expand(f.parse(s), ctx).to_string()}});
    result = {{"expansions", ex}};
  } else if (task == "hull") {
    HullPresentation H = hull_generators(parse_extension(job, a), b.horizon);
    json k = json::array(), l = json::array();
    for (const auto& g : H.kcal) k.push_back(g.name);
    for (const auto& g : H.lcal) {
      l.push_back(g.name);
      witnesses.push_back(g.name + " = " + g.value.to_string());
    }
    result = {{"stabilized", H.stabilized}, {"kcal", k}, {"lcal", l}};
  } else if (task == "relations") {
    HullPresentation H = hull_generators(parse_extension(job, a), b.horizon);
    RelationSet rs = find_relations(H, b.diff_order, b.degree);
    json rels = json::array(), syms = json::array();
    for (const auto& r : rs.relations) rels.push_back(to_string(r));
    for (const auto& s : rs.symbols) syms.push_back(s.name);
    result = {{"relations", rels}, {"symbols", syms}, {"sampling_horizon", rs.horizon}, {"monomials", rs.monomials}};
  } else if (task == "lieritt-solve") {
    const json& j = need(job, "job", "lieritt");
    only_keys(j, "lieritt", {"n", "generators"});
    const int n = j.contains("n") ? as_int(j.at("n"), "lieritt.n", 1) : 1;
    DiffRingPtr R = make_diff_ring(f, static_cast<std::size_t>(n), b.diff_order, b.horizon);
    LieRittIdeal I{R, {}};
    for (const auto& s : as_strings(need(j, "lieritt", "generators"), "lieritt.generators")) {
      I.gens.push_back(parse_diffpoly(R, s));
      witnesses.push_back(I.gens.back().to_string());
    }
    ZeroSet z = zero_set_solve(I, b.order, b.horizon);
    GroupTag t = identify_formal_group(z);
    result = {{"consistent", z.consistent}, {"shape", z.shape()},           {"params", strings(z.params)},
              {"tag", t.tag},               {"law", strings(t.law)},        {"beyond_horizon", strings(z.beyond_horizon)},
              {"obstruction", z.obstruction}, {"equations", z.equations}};
  } else if (task == "umemura") {
    UmemuraProblem pb = make_umemura_problem(parse_extension(job, a), b.horizon, b.diff_order, b.degree, b.order);
    UmemuraPoints pts = umemura_points(pb);
    json ideal = json::array();
    for (const auto& g : pts.ideal.gens) ideal.push_back(g.to_string());
    for (const auto& r : pb.relations.relations) witnesses.push_back(to_string(r));
    result = {{"ideal", ideal},
              {"consistent", pts.zero_set.consistent},
              {"shape", pts.zero_set.shape()},
              {"params", strings(pts.zero_set.params)},
              {"tag", pts.tag.tag},
              {"law", strings(pts.tag.law)},
              {"automorphism", strings(pts.automorphism)},
              {"beyond_horizon", strings(pts.zero_set.beyond_horizon)},
              {"obstruction", pts.zero_set.obstruction},
              {"unexpressed", pts.unexpressed},
              {"hull_stabilized", pb.hull.stabilized}};
  } else if (task == "pv-verify") {
    PVReport r = pv_verify(parse_pv(job, a), b.degree);
    result = {{"pass", r.pass}, {"checks", checks_json(r.checks)}};
    for (const auto& c : r.checks)
      if (!c.pass) witnesses.push_back(c.name + ": " + c.detail);
  } else if (task == "pv-hopf") {
    PVData d = parse_pv(job, a);
    HopfPresentation H = compute_H(d, b.degree);
    json gens = json::array();
    auto names = H.names();
    for (std::size_t i = 0; i < H.gens.size(); ++i)
      gens.push_back({{"name", names[i]},
                      {"element", H.elements[i]},
                      {"comultiplication", H.comul.at(i)},
                      {"counit", H.counit.at(i)},
                      {"antipode", H.antipodes.at(i)},
                      {"kind", H.kinds.at(i)}});
    std::vector<PVCheck> checks = H.checks;
    checks.push_back(mu_check(d, H, std::min(b.degree, 3)));
    result = {{"generators", gens}, {"relations", strings(H.relations)}, {"checks", checks_json(checks)},
              {"note", H.note}};
    for (const auto& c : checks)
      if (!c.pass) witnesses.push_back(c.name + ": " + c.detail);
  } else if (task == "pv-compare") {
    PVData d = parse_pv(job, a);
    CompareReport c = compare(d, b.order, b.horizon, b.diff_order);
    GaloisPoints G = galois_points(d, b.order, true);
    result = {{"bijection", c.bijection},
              {"homomorphism", c.homomorphism},
              {"kpoint", c.kpoint},
              {"umemura", {{"shape", c.umemura_shape}, {"tag", c.umemura_tag}}},
              {"galois", {{"shape", c.galois_shape}, {"params", strings(G.params)}, {"automorphism", strings(G.automorphism)}}},
              {"matrix", c.matrix},
              {"map", strings(c.map)},
              {"law", c.law},
              {"note", c.note}};
    for (const auto& r : G.relations) witnesses.push_back(r);
  } else if (task == "lie-dim") {
    PVData d = parse_pv(job, a);
    GaloisPoints G = galois_points(d, 2, true);
    result = {{"lie_dim", lie_dim(d)}, {"galois_shape", G.shape()}, {"params", strings(G.params)}};
  }

  json out;
  out["schema"] = kReportSchema;
  out["task"] = task;
  out["characteristic"] = f.p;
  out["bounds"] = bounds_json(b);
  out["result"] = result;
  out["witnesses"] = witnesses;
  out["timing"] = nullptr;
  return out;
}

}  // namespace modalg::cli
