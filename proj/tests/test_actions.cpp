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

#include "doctest.h"
#include "modalg/actions.hpp"
#include "modalg/matrix.hpp"
#include "modalg/parse.hpp"

using namespace modalg;

namespace {

FieldDesc qy(std::uint32_t p = 0) { return FieldDesc::make({}, {"y"}, p); }

// True if every element of a lies in span(b) and dimensions agree.
bool same_span(const FieldDesc& f, const std::vector<RatFunc>& a, const std::vector<RatFunc>& b) {
  if (a.size() != b.size()) return false;
  std::vector<int> all(f.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  auto mons = ring_monomials(f, 6, all);
  auto row = [&](const RatFunc& x) {
    std::vector<Scalar> r;
    for (const auto& e : mons) r.push_back(x.num().coeff(e));
    return r;
  };
  auto rank_of = [&](const std::vector<RatFunc>& xs) {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& x : xs) rows.push_back(row(x));
    Matrix<Scalar> m(rows);
    return rank(m);
  };
  std::vector<RatFunc> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank_of(a) == a.size() && rank_of(both) == a.size();
}

}  // namespace

TEST_CASE("measuring: iterative derivation, broken map, endomorphism") {
  auto f = qy();
  auto th = iterative_action(f, {"w"}, {{"y", "y + w"}});
  CHECK(check_measuring(*th, 3).pass);

  auto bad = std::make_shared<ActionSpec>(*th);
  bad->custom = [f](const DElem& d, const RatFunc& a) {
    if (d.k[0] == 0) return a;
    if (d.k[0] == 1) return a * a;
    return f.zero();
  };
  auto rep = check_measuring(*bad, 3);
  CHECK_FALSE(rep.pass);
  CHECK(rep.witness == "d=theta^(1), a=y, b=y");

  auto sigma = monoid_action(f, MonoidKind::End, {make_gen(f, "sigma", {{"y", "y^2"}}, MonoidKind::End)});
  CHECK(check_measuring(*sigma, 3).pass);
}

TEST_CASE("module algebra laws") {
  auto th = iterative_action(qy(), {"w"}, {{"y", "y + w"}}, 6);
  CHECK(check_module_algebra(*th, 6).pass);

  auto f2 = qy(2);
  auto th2 = iterative_action(f2, {"t"}, {{"y", "y + t"}});
  CHECK(th2->apply(DElem{{1}, {}}, th2->apply(DElem{{1}, {}}, f2.parse("y^2"))).is_zero());
  CHECK(th2->apply(DElem{{2}, {}}, f2.parse("y^2")).is_one());
  CHECK(check_module_algebra(*th2, 6).pass);

  auto nonit = iterative_action(qy(), {"t"}, {{"y", "y + t + t^2"}});
  auto rep = check_module_algebra(*nonit, 4);
  CHECK_FALSE(rep.pass);
  CHECK(rep.law == "iterativity");
  CHECK(rep.witness == "(i,j)=((1),(1)), x=y");
  // It still measures: it is a ring homomorphism into the series ring.
  CHECK(check_measuring(*nonit, 3).pass);
}

TEST_CASE("smash product commutation rule") {
  auto f = qy();
  auto base = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto a = std::make_shared<ActionSpec>(*base);
  a->monoid = MonoidKind::End;
  a->gens = {make_gen(f, "sigma", {{"y", "2*y"}}, MonoidKind::End)};
  a->monoid_horizon = 3;
  // Without a rule sigma and theta do not commute.
  CHECK_FALSE(check_module_algebra(*a, 3).pass);
  for (int l = 1; l <= 6; ++l) a->rule[{0, Exp{l}}] = {{Exp{l}, Scalar(1) / Scalar(2).pow(l)}};
  CHECK(check_module_algebra(*a, 3).pass);
  CHECK(check_measuring(*a, 2).pass);
}

TEST_CASE("constants") {
  auto f = qy();
  auto th = iterative_action(f, {"w"}, {{"y", "y + w"}});
  auto c = constants(*th, 3);
  REQUIRE(c.size() == 1);
  CHECK(c[0].is_one());

  auto f2 = FieldDesc::make({}, {"y1", "y2"}, 0);
  auto diag = iterative_action(f2, {"t"}, {{"y1", "y1 + t"}, {"y2", "y2 + t"}});
  auto c2 = constants(*diag, 2);
  CHECK(same_span(f2, c2, {f2.one(), f2.parse("y2 - y1"), f2.parse("(y2 - y1)^2")}));
  // Closed under products within the degree bound.
  CHECK(same_span(f2, c2, {c2[0], c2[1], c2[1] * c2[1]}));

  // Char 2: y^2 is killed by theta^(1) but not by theta^(2).
  auto fp = qy(2);
  auto thp = iterative_action(fp, {"t"}, {{"y", "y + t"}});
  auto cp = constants(*thp, 3);
  REQUIRE(cp.size() == 1);
  CHECK(cp[0].is_one());
}

TEST_CASE("constants of a product with cyclic shift") {
  ProductRing P;
  P.factor = qy();
  P.count = 3;
  P.gens.push_back({{2, 0, 1}, {}});
  auto c = product_constants(P, 1);
  REQUIRE(c.size() == 2);
  for (const auto& t : c) {
    CHECK(t[0] == t[1]);
    CHECK(t[1] == t[2]);
  }
  CHECK(same_span(P.factor, {c[0][0], c[1][0]}, {P.factor.one(), P.factor.var(0)}));
}

TEST_CASE("product simplicity") {
  ProductRing P;
  P.factor = qy();
  P.count = 3;
  P.gens.push_back({{2, 0, 1}, {}});
  auto r = check_product_simplicity(P);
  CHECK(r.simple);
  CHECK(r.orbits.size() == 1);

  ProductRing Q;
  Q.factor = qy();
  Q.count = 2;
  Q.gens.push_back({{0, 1}, {}});
  r = check_product_simplicity(Q);
  CHECK_FALSE(r.simple);
  CHECK(r.orbits == std::vector<std::vector<int>>{{1}, {2}});

  ProductRing S;
  S.factor = qy();
  S.count = 4;
  S.gens.push_back({{2, 3, 0, 1}, {}});
  r = check_product_simplicity(S);
  CHECK_FALSE(r.simple);
  CHECK(r.orbits == std::vector<std::vector<int>>{{1, 3}, {2, 4}});

  ProductRing T;
  T.factor = qy();
  T.count = 2;
  T.gens.push_back({{0, 0}, {}});
  r = check_product_simplicity(T);
  CHECK_FALSE(r.injective);
  CHECK_FALSE(r.simple);
}

TEST_CASE("psi_int on sequences and series") {
  auto f = qy();
  auto sigma = monoid_action(f, MonoidKind::End, {make_gen(f, "sigma", {{"y", "y + 1"}}, MonoidKind::End)});
  auto ctx = make_hom_context(sigma, 0, 4);
  std::vector<Poly<RatFunc>> vals;
  for (int i = 0; i < 4; ++i) vals.push_back(Poly<RatFunc>::constant(ctx->sp, f.parse("y^" + std::to_string(i + 1))));
  HomElement seq(ctx, vals);
  auto shifted = psi_int(DElem{{}, {1}}, seq);
  CHECK(shifted.to_string() == "(y^2, y^3, y^4)");

  auto th = iterative_action(f, {"w"}, {{"y", "y + w"}});
  auto sctx = make_hom_context(th, 4, 1);
  auto fw = parse_series("y + 2*w + 3*w^2", sctx->sp, f.vars, 0);
  HomElement s(sctx, std::vector<Poly<RatFunc>>{fw});
  CHECK(psi_int(DElem{{1}, {}}, s).to_string() == "2 + 6*w");

  // Constants of psi_int are the constant expansions.
  auto c = HomElement::constant(sctx, f.parse("y^2 + 1/y"));
  for (int k = 0; k <= 3; ++k) {
    auto r = psi_int(DElem{{k}, {}}, c);
    auto expect = HomElement::constant(r.ctx(), k == 0 ? f.parse("y^2 + 1/y") : f.zero());
    CHECK(r == expect);
  }
  auto once = psi_int(DElem{{}, {1}}, psi_int(DElem{{}, {1}}, shifted));
  CHECK(once.to_string() == "(y^4)");
  CHECK_THROWS_AS(psi_int(DElem{{}, {1}}, once), horizon_error);
}

TEST_CASE("psi_int commutes with a coefficientwise action") {
  auto f = FieldDesc::make({}, {"y", "z"}, 0);
  auto th = iterative_action(f, {"w"}, {{"y", "y + w"}});
  auto sigma = monoid_action(f, MonoidKind::End, {make_gen(f, "sigma", {{"z", "z^2 + y"}}, MonoidKind::End)});
  auto ctx = make_hom_context(th, 5, 1);
  auto g = parse_series("y*z + w*z^2 + 3*w^3*y/z", ctx->sp, f.vars, 0);
  HomElement fe(ctx, std::vector<Poly<RatFunc>>{g});
  auto act = [&](const HomElement& h) {
    std::vector<Poly<RatFunc>> v;
    for (const auto& x : h.values()) v.push_back(x.map_coeffs([&](const RatFunc& c) { return sigma->apply_gen(0, c); }));
    return HomElement(h.ctx(), v);
  };
  for (int k = 0; k <= 3; ++k) CHECK(psi_int(DElem{{k}, {}}, act(fe)) == act(psi_int(DElem{{k}, {}}, fe)));
}

TEST_CASE("convolution and unit") {
  auto f = qy();
  auto sigma = monoid_action(f, MonoidKind::End, {make_gen(f, "sigma", {{"y", "y + 1"}}, MonoidKind::End)});
  auto ctx = make_hom_context(sigma, 0, 3);
  auto seq = [&](std::vector<long> xs) {
    std::vector<Poly<RatFunc>> v;
    for (long x : xs) v.push_back(Poly<RatFunc>::constant(ctx->sp, f.constant(Scalar(x))));
    return HomElement(ctx, v);
  };
  CHECK(convolution(seq({1, 2, 4}), seq({1, 3, 9})) == seq({1, 6, 36}));
  CHECK(unit_hom(ctx) == seq({1, 1, 1}));
  CHECK(unit_hom(ctx).to_string() == "(1, 1, 1)");
}

TEST_CASE("Der and IterDer expansions agree in characteristic 0") {
  auto f = FieldDesc::make({}, {"y", "z"}, 0);
  auto der = derivation_action(f, {{"y", "1"}, {"z", "z"}}, "w");
  auto it = iterative_action(f, {"w"}, {{"y", "y + w"}, {"z", "z*exp(w)"}});
  CHECK(check_module_algebra(*der, 4).pass);
  CHECK(check_module_algebra(*it, 4).pass);
  auto sp = der->t_space(6);
  for (const char* e : {"y", "z", "y^2*z + 1/z", "(y + z)/(y - z)"}) {
    auto a = f.parse(e);
    CHECK(der->theta_series(a, sp) == it->theta_series(a, sp));
  }
  CHECK(der->theta_series(f.parse("y^2"), sp).coeff({1}) == f.parse("2*y"));
  CHECK_THROWS_AS(derivation_action(qy(3), {{"y", "1"}}), invalid_field);
}

TEST_CASE("automorphisms and free monoids") {
  auto f = qy();
  auto g = make_gen(f, "s", {{"y", "2*y + 3"}}, MonoidKind::Aut);
  auto a = monoid_action(f, MonoidKind::Aut, {g}, 3);
  CHECK(a->apply_word({-1}, f.var(0)) == f.parse("(y - 3)/2"));
  CHECK(check_module_algebra(*a, 2).pass);
  CHECK_THROWS_AS(make_gen(f, "s", {{"y", "y^3"}}, MonoidKind::Aut), schema_error);

  auto m = monoid_action(f, MonoidKind::Free,
                         {make_gen(f, "a", {{"y", "y + 1"}}, MonoidKind::Free),
                          make_gen(f, "b", {{"y", "y^2"}}, MonoidKind::Free)},
                         3);
  CHECK(m->keys(3).size() == 7);
  CHECK(m->apply_word({0, 1}, f.var(0)) == f.parse("(y + 1)^2"));
  CHECK(check_measuring(*m, 2).pass);
  CHECK(check_module_algebra(*m, 2).pass);
}
