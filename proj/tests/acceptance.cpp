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

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "modalg/pv.hpp"
#include "modalg/taylor.hpp"
#include "test_util.hpp"

using namespace modalg;
using modalg::testing::random_ratfunc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failed condition.
struct Tally {
  Outcome out;
  int checks = 0;
  void require(bool ok, const std::string& what) {
    ++checks;
    if (!ok && out.pass) {
      out.pass = false;
      out.detail = what;
    }
  }
  Outcome done(const std::string& summary) {
    if (out.pass) out.detail = summary + " (" + std::to_string(checks) + " checks)";
    return out;
  }
};

FieldDesc qy(std::uint32_t p = 0) { return FieldDesc::make({}, {"y"}, p); }

FieldDesc laurent_y() {
  FieldDesc f = qy();
  f.laurent = {0};
  return f;
}

ActionPtr additive_action() { return iterative_action(qy(), {"t"}, {{"y", "y + t"}}); }
ActionPtr exponential_action() { return iterative_action(qy(), {"t"}, {{"y", "y*exp(t)"}}); }

PVData additive_pv() { return make_pv(additive_action(), {{"1", "y"}, {"0", "1"}}); }
PVData exponential_pv() { return make_pv(iterative_action(laurent_y(), {"t"}, {{"y", "y*exp(t)"}}), {{"y"}}); }
PVData difference_pv() {
  FieldDesc f = laurent_y();
  return make_pv(monoid_action(f, MonoidKind::Aut, {make_gen(f, "sigma", {{"y", "2*y"}}, MonoidKind::Aut)}, 4),
                 {{"y"}});
}

Outcome iterativity() {
  Tally t;
  std::mt19937 rng(101);
  for (std::uint32_t p : {0u, 5u}) {
    auto f = qy(p);
    auto th = iterative_action(f, {"t"}, {{"y", "y + t"}}, 8);
    for (int s = 0; s < 100; ++s) {
      RatFunc a = random_ratfunc(rng, f);
      for (int i = 0; i <= 8; ++i)
        for (int j = 0; i + j <= 8; ++j) {
          RatFunc lhs = th->apply(DElem{{i}, {}}, th->apply(DElem{{j}, {}}, a));
          RatFunc rhs = th->apply(DElem{{i + j}, {}}, a) * f.constant(binom(i + j, i, p));
          t.require(lhs == rhs, "p = " + std::to_string(p) + ", i = " + std::to_string(i) + ", j = " +
                                    std::to_string(j) + ", a = " + a.to_string());
        }
    }
  }
  return t.done("Q(y) and F_5(y), 100 elements each, i + j <= 8");
}

InfTransform random_transform(std::mt19937& rng, const GammaPtr& g) {
  InfTransform t = identity_transform(g);
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, 3);
  const auto& L = g->A.base;
  for (auto& c : t.phi)
    for (int rep = 0; rep < 4; ++rep) {
      Exp e(g->sp->size(), 0);
      e[g->epsvars[static_cast<std::size_t>(pick(rng)) % g->epsvars.size()]] += 1;
      if (pick(rng) == 0) e[g->epsvars[static_cast<std::size_t>(pick(rng)) % g->epsvars.size()]] += 1;
      for (int w : g->wvars) e[w] = pick(rng) % 3;
      int k = coef(rng);
      if (k) c.add_term(e, L.constant(Scalar(k, 0)) * (pick(rng) == 0 ? L.var(0) : L.one()));
    }
  return t;
}

Outcome gamma_axioms() {
  Tally t;
  std::mt19937 rng(102);
  for (std::size_t n : {1u, 2u})
    for (int m : {2, 3}) {
      auto g = make_gamma(NilAlgebra{qy(), {"e1", "e2"}, m}, n, 6);
      auto id = identity_transform(g);
      const std::string where = "n = " + std::to_string(n) + ", m = " + std::to_string(m);
      for (int i = 0; i < 200; ++i) {
        auto a = random_transform(rng, g), b = random_transform(rng, g), c = random_transform(rng, g);
        t.require(compose(compose(a, b), c) == compose(a, compose(b, c)), "associativity, " + where);
        t.require(compose(a, id) == a && compose(id, a) == a, "identity, " + where);
        auto ai = invert(a);
        t.require(compose(a, ai) == id && compose(ai, a) == id, "inverse, " + where);
      }
    }
  return t.done("n in {1, 2}, m in {2, 3}, horizon 6, 200 triples each");
}

LieRittIdeal ideal(int horizon, const std::string& first) {
  auto R = make_diff_ring(qy(), 1, horizon, horizon);
  LieRittIdeal I{R, {parse_diffpoly(R, first)}};
  for (int k = 2; k <= horizon; ++k) I.gens.push_back(parse_diffpoly(R, "Y[" + std::to_string(k) + "]"));
  return I;
}

Outcome lie_ritt() {
  Tally t;
  const std::vector<std::pair<std::string, std::string>> cases = {
      {"Y[1] - 1", "a0 + w"}, {"w*Y[1] - Y", "(1 + a1)*w"}, {"(y + w)*Y[1] - Y - y", "y*a1 + (1 + a1)*w"}};
  for (const auto& [F, shape] : cases) {
    auto z = zero_set_solve(ideal(5, F), 3, 5);
    t.require(z.consistent && z.shape() == shape, "Z(" + F + ") = " + z.shape());
  }
  auto g = make_gamma(NilAlgebra{qy(), {"a1", "b1"}, 3}, 1, 4);
  auto p = compose(parse_transform(g, {"y*a1 + (1 + a1)*w"}), parse_transform(g, {"y*b1 + (1 + b1)*w"}));
  auto expect = parse_transform(g, {"y*(a1 + b1 + a1*b1) + (1 + a1 + b1 + a1*b1)*w"});
  auto constant_part = [&](const Poly<RatFunc>& f) {
    Poly<RatFunc> c(g->sp, g->A.base.zero());
    for (const auto& [e, v] : f.terms())
      if (e[g->wvars[0]] == 0) c.add_term(e, v);
    return c;
  };
  t.require(constant_part(p.phi[0]) == constant_part(expect.phi[0]),
            "product of G~_* points: " + format_series(*g, p.phi[0]));
  t.require(p == expect, "product of G~_* points: " + format_series(*g, p.phi[0]));
  return t.done("three zero sets and the G~_* product coefficient");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome umemura() {
  Tally t;
  auto t0 = std::chrono::steady_clock::now();
  auto add = make_umemura_problem(make_extension(additive_action(), {"y"}), 4, 3);
  auto ia = umemura_ideal(add);
  std::vector<std::string> ga;
  for (const auto& g : ia.gens) ga.push_back(g.to_string());
  t.require(ga == std::vector<std::string>{"Y[1] - 1", "Y[2]", "Y[3]"}, "additive ideal");
  auto pa = umemura_points(add);
  t.require(pa.tag.tag == "Ĝ_a", "additive tag " + pa.tag.tag);
  t.require(seconds_since(t0) < 60, "additive example exceeded 60 s");
  t0 = std::chrono::steady_clock::now();

  auto exp = make_umemura_problem(make_extension(exponential_action(), {"y"}), 4, 2);
  auto ie = umemura_ideal(exp);
  t.require(!ie.gens.empty() && ie.gens[0].to_string() == "Y[1]*w + y*Y[1] - Y - y",
            "exponential relation " + (ie.gens.empty() ? std::string("none") : ie.gens[0].to_string()));
  auto pe = umemura_points(exp);
  t.require(pe.tag.tag.rfind("Ĝ_m", 0) == 0, "exponential tag " + pe.tag.tag);
  t.require(seconds_since(t0) < 60, "exponential example exceeded 60 s");
  return t.done("ideals (Y[1] - 1, Y[k]) and (y + w)Y[1] - Y - y, tags Ĝ_a and " + pe.tag.tag);
}

Scalar eval_mpoly(const MPoly& f, const std::vector<Scalar>& vals) {
  Scalar s(0, 0);
  for (const auto& [e, c] : f.terms()) {
    Scalar term = c;
    for (std::size_t v = 0; v < e.size(); ++v)
      for (int r = 0; r < e[v]; ++r) term *= vals[v];
    s += term;
  }
  return s;
}

Outcome group_law() {
  Tally t;
  std::mt19937 rng(105);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto L = qy();
  for (std::size_t n : {1u, 2u}) {
    const int N = 4;
    auto gl = group_law_coeffs(n, N);
    auto g = make_gamma(NilAlgebra{L, {"e"}, 3}, n, N + 2);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Scalar> vals(gl.sp->size(), Scalar(0, 0));
      InfTransform phi = identity_transform(g), psi = identity_transform(g);
      for (auto& c : phi.phi) c = Poly<RatFunc>(g->sp, L.zero());
      for (auto& c : psi.phi) c = Poly<RatFunc>(g->sp, L.zero());
      for (std::size_t v = 0; v < gl.sp->size(); ++v) {
        const std::string nm = gl.sp->name(v);
        int j = 0;
        Exp k;
        if (n == 1) {
          k = {std::stoi(nm.substr(1))};
        } else {
          std::size_t us = nm.find('_');
          j = std::stoi(nm.substr(1, us - 1)) - 1;
          std::string rest = nm.substr(us + 1);
          std::size_t q = rest.find('_');
          k = {std::stoi(rest.substr(0, q)), std::stoi(rest.substr(q + 1))};
        }
        int x = total_degree(k) == 0 ? 0 : coef(rng);
        vals[v] = Scalar(x, 0);
        Exp e(g->sp->size(), 0);
        for (std::size_t i = 0; i < n; ++i) e[g->wvars[i]] = k[i];
        (nm[0] == 'u' ? phi : psi).phi[j].add_term(e, L.constant(Scalar(x, 0)));
      }
      auto comp = compose(psi, phi);
      for (const auto& [il, f] : gl.coeffs) {
        Exp e(g->sp->size(), 0);
        for (std::size_t i = 0; i < n; ++i) e[g->wvars[i]] = il.second[i];
        t.require(comp.phi[il.first].coeff(e) == L.constant(eval_mpoly(f, vals)),
                  "n = " + std::to_string(n) + ", trial " + std::to_string(trial));
      }
    }
  }
  return t.done("n in {1, 2}, |l| <= 4, 50 samples each");
}

Outcome pv_pipeline() {
  Tally t;
  const std::vector<std::tuple<std::string, PVData, std::string, std::string>> cases = {
      {"additive", additive_pv(), "h⊗1 + 1⊗h", "primitive"},
      {"exponential", exponential_pv(), "h⊗h", "group-like"},
      {"difference", difference_pv(), "h⊗h", "group-like"}};
  for (const auto& [name, data, comul, kind] : cases) {
    auto v = pv_verify(data, 3);
    t.require(v.pass, name + ": PV axioms");
    auto H = compute_H(data, 4);
    t.require(H.gens.size() == 1, name + ": " + std::to_string(H.gens.size()) + " generators");
    if (H.gens.size() != 1) continue;
    t.require(H.comul[0] == comul && H.kinds[0] == kind, name + ": Delta h = " + H.comul[0]);
    for (const auto& c : H.checks) t.require(c.pass, name + ": " + c.name + ": " + c.detail);
    auto mu = mu_check(data, H, 3);
    t.require(mu.pass, name + ": mu: " + mu.detail);
  }
  return t.done("Hopf axioms to degree 4, mu to degree 3, three examples");
}

std::string substitute_names(std::string s, const std::vector<std::string>& map) {
  for (const auto& m : map) {
    auto eq = m.find(" = ");
    if (eq == std::string::npos) continue;
    const std::string from = m.substr(0, eq), to = m.substr(eq + 3);
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size()))
      s.replace(pos, from.size(), to);
  }
  return s;
}

Outcome comparison() {
  Tally t;
  const std::vector<std::tuple<std::string, PVData, std::string>> cases = {
      {"additive", additive_pv(), "sigma(y ⊗ 1) = y ⊗ 1 + 1 ⊗ a0"},
      {"exponential", exponential_pv(), "sigma(y ⊗ 1) = y ⊗ (1 + a1)"}};
  for (const auto& [name, data, expect] : cases) {
    auto c = compare(data);
    t.require(c.bijection, name + ": no bijection: " + c.note);
    t.require(c.homomorphism, name + ": not a homomorphism: " + c.note);
    auto G = galois_points(data, 2);
    t.require(G.automorphism.size() == 1, name + ": automorphism count");
    if (G.automorphism.size() == 1) {
      auto s = substitute_names(G.automorphism[0], c.map);
      t.require(s == expect, name + ": " + s);
    }
    int d = lie_dim(data);
    t.require(d == 1, name + ": lie_dim = " + std::to_string(d));
  }
  return t.done("parameter bijections m12 = a0 and m11 = a1, lie_dim 1");
}

Outcome char2() {
  Tally t;
  std::mt19937 rng(108);
  auto f = qy(2);
  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  t.require(th->apply(DElem{{1}, {}}, f.parse("y^2")).is_zero(), "theta^(1)(y^2) != 0");
  t.require(th->apply(DElem{{2}, {}}, f.parse("y^2")).is_one(), "theta^(2)(y^2) != 1");
  auto ctx = make_hom_context(th, 6, 1);
  for (int i = 0; i < 100; ++i) {
    RatFunc a = random_ratfunc(rng, f), b = random_ratfunc(rng, f);
    t.require(taylor_expand(a * b, ctx) == taylor_expand(a, ctx) * taylor_expand(b, ctx),
              "rho(ab) != rho(a)rho(b) for a = " + a.to_string() + ", b = " + b.to_string());
  }
  return t.done("F_2(y): theta^(1)(y^2) = 0, theta^(2)(y^2) = 1, 100 pairs");
}

Outcome basis_independence() {
  Tally t;
  auto Hu = hull_generators(make_extension(additive_action(), {"y"}), 6);
  auto Hv = hull_generators(make_extension(additive_action(), {"2*y"}), 6);
  std::vector<HomElement> gu, gv;
  for (const auto& g : Hu.lcal) gu.push_back(g.value);
  for (const auto& g : Hv.lcal) gv.push_back(g.value.rehome(Hu.ctx));
  for (std::size_t i = 0; i < gu.size(); ++i) t.require(in_l_span(gu[i], gv, 1), "u-generator " + Hu.lcal[i].name);
  for (std::size_t i = 0; i < gv.size(); ++i) t.require(in_l_span(gv[i], gu, 1), "v-generator " + Hv.lcal[i].name);
  return t.done("u = y and v = 2y, horizon 6");
}

struct Criterion {
  int id;
  double limit_s;  // 0 = no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> cs = {
      {1, 10, iterativity},  {2, 30, gamma_axioms}, {3, 0, lie_ritt}, {4, 0, umemura},
      {5, 0, group_law},     {6, 0, pv_pipeline},   {7, 0, comparison}, {8, 0, char2},
      {9, 0, basis_independence}};
  std::map<int, bool> passed;
  bool all = true;
  auto report = [&](int id, bool ok, double s, const std::string& detail) {
    std::ostringstream line;
    line.precision(3);
    line << std::fixed << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << " [" << s << " s] " << detail;
    std::cout << line.str() << std::endl;
    passed[id] = ok;
    all = all && ok;
  };
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double s = seconds_since(t0);
    if (o.pass && c.limit_s > 0 && s >= c.limit_s) {
      o.pass = false;
      o.detail = "exceeded " + std::to_string(static_cast<int>(c.limit_s)) + " s: " + o.detail;
    }
    report(c.id, o.pass, s, o.detail);
  }
  bool props = true;
  for (int id : {2, 3, 4, 5, 7, 9}) props = props && passed[id];
  report(10, props, 0, "bounded-instance suites 2-5, 7 and 9");
  return all ? 0 : 1;
}
