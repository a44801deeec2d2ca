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

#include <random>

#include "doctest.h"
#include "modalg/lieritt.hpp"
#include "modalg/parse.hpp"

using namespace modalg;

namespace {

FieldDesc qy() { return FieldDesc::make({}, {"y"}, 0); }

InfTransform T(const GammaPtr& g, std::vector<std::string> c) { return parse_transform(g, c); }

LieRittIdeal ideal(const FieldDesc& L, int horizon, const std::string& first) {
  auto R = make_diff_ring(L, 1, horizon, horizon);
  LieRittIdeal I{R, {parse_diffpoly(R, first)}};
  for (int k = 2; k <= horizon; ++k) I.gens.push_back(parse_diffpoly(R, "Y[" + std::to_string(k) + "]"));
  return I;
}

// Random transform: identity plus small rational multiples of eps-monomials times w-monomials.
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

}  // namespace

TEST_CASE("composition in Gamma_1") {
  auto L = qy();
  auto g = make_gamma(NilAlgebra{L, {"a", "b"}, 2}, 1, 4);
  auto c = compose(T(g, {"a + w"}), T(g, {"b + w"}));
  CHECK(c == T(g, {"a + b + w"}));
  CHECK(c.to_string() == "b + a + w");
  auto phi = T(g, {"a + (1 + b)*w + a*w^2"});
  CHECK(compose(phi, identity_transform(g)) == phi);
  CHECK(compose(identity_transform(g), phi) == phi);

  auto g2 = make_gamma(NilAlgebra{L, {"a1", "b1"}, 3}, 1, 4);
  auto p = compose(T(g2, {"y*a1 + (1 + a1)*w"}), T(g2, {"y*b1 + (1 + b1)*w"}));
  CHECK(p == T(g2, {"y*(a1 + b1 + a1*b1) + (1 + a1 + b1 + a1*b1)*w"}));
  CHECK_THROWS_AS(T(g, {"1 + w"}), math_error);
}

TEST_CASE("inverses in Gamma_1") {
  auto L = qy();
  auto g = make_gamma(NilAlgebra{L, {"a"}, 2}, 1, 4);
  CHECK(invert(T(g, {"a + w"})) == T(g, {"-a + w"}));
  CHECK(invert(identity_transform(g)) == identity_transform(g));
  auto g1 = make_gamma(NilAlgebra{L, {"a1"}, 2}, 1, 4);
  CHECK(invert(T(g1, {"(1 + a1)*w"})) == T(g1, {"(1 - a1)*w"}));
}

TEST_CASE("group axioms on random transforms") {
  std::mt19937 rng(31);
  auto L = qy();
  for (std::size_t n : {1u, 2u}) {
    auto g = make_gamma(NilAlgebra{L, {"e1", "e2"}, 3}, n, 4);
    auto id = identity_transform(g);
    for (int i = 0; i < 200; ++i) {
      auto a = random_transform(rng, g), b = random_transform(rng, g), c = random_transform(rng, g);
      REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
      REQUIRE(compose(a, id) == a);
      REQUIRE(compose(id, a) == a);
      auto ai = invert(a);
      REQUIRE(compose(a, ai) == id);
      REQUIRE(compose(ai, a) == id);
      REQUIRE(reduce(a) == id);
    }
  }
}

TEST_CASE("differential polynomial evaluation") {
  auto L = qy();
  auto R = make_diff_ring(L, 1, 2, 4);
  auto g = make_gamma(NilAlgebra{L, {"a", "a0", "a1"}, 2}, 1, 4);
  auto zero = Poly<RatFunc>(g->sp, L.zero());
  CHECK(diffpoly_eval(parse_diffpoly(R, "Y[2]"), T(g, {"w + a*w^2"})) == parse_series("a", g->sp, L.vars, 0));
  CHECK(diffpoly_eval(parse_diffpoly(R, "Y[1] - 1"), T(g, {"a0 + w"})) == zero);
  CHECK(diffpoly_eval(parse_diffpoly(R, "w*Y[1] - Y"), T(g, {"(1 + a1)*w"})) == zero);
}

TEST_CASE("theta acts on differential polynomials") {
  auto L = qy();
  auto R = make_diff_ring(L, 1, 2, 6);
  auto F = parse_diffpoly(R, "Y[1] - 1");
  CHECK(diffpoly_theta(F, {1}).to_string() == "2*Y[2]");
  auto G = parse_diffpoly(R, "w*Y[1] - Y");
  CHECK(diffpoly_theta(G, {1}).to_string() == "2*Y[2]*w");
  // theta^(l) commutes with evaluation.
  auto g = make_gamma(NilAlgebra{L, {"a", "b"}, 3}, 1, 6);
  auto phi = T(g, {"a + (1 + b)*w + a*b*w^2 + y*a*w^3"});
  for (const auto& H : {F, G, parse_diffpoly(R, "(y + w)*Y[1]^2 - Y*Y[2]")})
    for (int l = 1; l <= 2; ++l) {
      auto lhs = diffpoly_eval(diffpoly_theta(H, {l}), phi);
      auto rhs = hasse(*g, diffpoly_eval(H, phi), {l});
      const int exact = g->horizon - H.order() - l;
      const auto diff = lhs - rhs;
      for (const auto& [e, c] : diff.terms()) CHECK(total_degree(e) > exact);
    }
}

TEST_CASE("Lie-Ritt zero sets of the worked ideals") {
  auto L = qy();
  auto add = zero_set_solve(ideal(L, 5, "Y[1] - 1"), 3, 5);
  CHECK(add.consistent);
  CHECK(add.shape() == "a0 + w");
  CHECK(add.params == std::vector<std::string>{"a0"});
  CHECK(add.obstruction.empty());
  CHECK(identify_formal_group(add).tag == "Ĝ_a");

  auto mul = zero_set_solve(ideal(L, 5, "w*Y[1] - Y"), 3, 5);
  CHECK(mul.shape() == "(1 + a1)*w");
  CHECK(identify_formal_group(mul).tag == "Ĝ_m");

  auto conj = zero_set_solve(ideal(L, 5, "(y + w)*Y[1] - Y - y"), 3, 5);
  CHECK(conj.shape() == "y*a1 + (1 + a1)*w");
  auto tag = identify_formal_group(conj);
  CHECK(tag.tag == "Ĝ_m (via G̃_*)");
  REQUIRE(tag.law.size() == 1);
  CHECK(tag.law[0] == "a1'' = a1' + a1 + a1*a1'");

  auto R = make_diff_ring(L, 1, 1, 4);
  auto triv = zero_set_solve(LieRittIdeal{R, {parse_diffpoly(R, "Y - w")}}, 3, 4);
  CHECK(triv.shape() == "w");
  CHECK(identify_formal_group(triv).tag == "trivial");

  auto none = zero_set_solve(ideal(L, 4, "Y[1] - 1"), 1, 4);
  CHECK(none.params.empty());
  CHECK(none.shape() == "w");

  auto bad = zero_set_solve(LieRittIdeal{R, {parse_diffpoly(R, "Y[1] - 2")}}, 3, 4);
  CHECK_FALSE(bad.consistent);
  CHECK(bad.shape() == "empty");
}

TEST_CASE("zero sets are subgroups") {
  auto L = qy();
  for (const char* first : {"Y[1] - 1", "w*Y[1] - Y", "(y + w)*Y[1] - Y - y"}) {
    auto I = ideal(L, 5, first);
    auto z = zero_set_solve(I, 3, 5);
    REQUIRE(z.params.size() == 1);
    const std::string p = z.params[0];
    auto g = make_gamma(NilAlgebra{L, {p, "b"}, 3}, 1, 5);
    std::string s = z.shape(), sb;
    auto a = T(g, {s});
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.compare(i, p.size(), p) == 0) {
        sb += "b";
        i += p.size() - 1;
      } else {
        sb += s[i];
      }
    auto b = T(g, {sb});
    for (const auto& x : {compose(a, b), invert(a)})
      for (const auto& F : I.gens) {
        const int exact = g->horizon - F.order();
        const auto v = diffpoly_eval(F, x);
        for (const auto& [e, c] : v.terms()) CHECK(total_degree(e) > exact);
      }
  }
}

TEST_CASE("the conjugation G_* -> G~_* is a homomorphism") {
  auto L = qy();
  auto g = make_gamma(NilAlgebra{L, {"a1", "b1"}, 3}, 1, 4);
  auto m = [&](const char* a) { return T(g, {std::string("(1 + ") + a + ")*w"}); };
  auto c = [&](const char* a) { return T(g, {std::string("y*") + a + " + (1 + " + a + ")*w"}); };
  auto prod = compose(m("a1"), m("b1"));
  CHECK(prod == T(g, {"(1 + a1 + b1 + a1*b1)*w"}));
  CHECK(compose(c("a1"), c("b1")) == T(g, {"y*(a1 + b1 + a1*b1) + (1 + a1 + b1 + a1*b1)*w"}));
}

TEST_CASE("formal group law coefficients") {
  auto gl = group_law_coeffs(1, 4);
  auto f2 = gl.coeffs.at({0, {2}});
  // Setting u0 = 0.
  MPoly r(gl.sp, Scalar(0, 0));
  for (const auto& [e, c] : f2.terms())
    if (e[gl.sp->require("u0")] == 0) r.add_term(e, c);
  CHECK(to_string(r, true) == "u2*v1 + u1^2*v2");
  auto f0 = gl.coeffs.at({0, {0}});
  CHECK(f0 == parse_mpoly("v0 + v1*u0 + v2*u0^2 + v3*u0^3 + v4*u0^4", gl.sp, 0));

  // Identity law psi = w.
  for (const auto& [il, f] : gl.coeffs) {
    std::vector<MPoly> imgs;
    for (std::size_t v = 0; v < gl.sp->size(); ++v) {
      const auto& nm = gl.sp->name(v);
      if (nm[0] == 'v')
        imgs.push_back(MPoly::constant(gl.sp, Scalar(nm == "v1" ? 1 : 0, 0)));
      else
        imgs.push_back(MPoly::variable(gl.sp, static_cast<int>(v), Scalar(1, 0)));
    }
    std::vector<const MPoly*> ptrs;
    for (const auto& x : imgs) ptrs.push_back(&x);
    CHECK(substitute(f, gl.sp, ptrs) == MPoly::variable(gl.sp, gl.sp->require("u" + std::to_string(il.second[0])), Scalar(1, 0)));
  }
}

TEST_CASE("group law matches composition") {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> coef(-4, 4);
  auto L = FieldDesc::make({}, {"y"}, 0);
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
        // Parse u{j}_{k..} / v{j}_{k..} back to (j, k).
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
        // Zero constant terms keep the reference composition finite.
        int x = total_degree(k) == 0 ? 0 : coef(rng);
        vals[v] = Scalar(x, 0);
        Exp e(g->sp->size(), 0);
        for (std::size_t i = 0; i < n; ++i) e[g->wvars[i]] = k[i];
        (nm[0] == 'u' ? phi : psi).phi[j].add_term(e, L.constant(Scalar(x, 0)));
      }
      auto comp = compose(psi, phi);
      for (const auto& [il, f] : gl.coeffs) {
        Scalar s(0, 0);
        for (const auto& [e, c] : f.terms()) {
          Scalar t = c;
          for (std::size_t v = 0; v < e.size(); ++v)
            for (int r = 0; r < e[v]; ++r) t *= vals[v];
          s += t;
        }
        Exp e(g->sp->size(), 0);
        for (std::size_t i = 0; i < n; ++i) e[g->wvars[i]] = il.second[i];
        REQUIRE(comp.phi[il.first].coeff(e) == L.constant(s));
      }
    }
  }
}
