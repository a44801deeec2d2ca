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
#include "modalg/parse.hpp"
#include "modalg/taylor.hpp"
#include "test_util.hpp"

using namespace modalg;
using modalg::testing::random_ratfunc;

namespace {

FieldDesc qy(std::uint32_t p = 0) { return FieldDesc::make({}, {"y"}, p); }

ActionPtr shift_action(const FieldDesc& f, const char* img = "y + 1") {
  return monoid_action(f, MonoidKind::End, {make_gen(f, "sigma", {{"y", img}}, MonoidKind::End)});
}

}  // namespace

TEST_CASE("Taylor and Euler expansions") {
  auto f = qy();
  auto der = derivation_action(f, {{"y", "1"}}, "w");
  auto ctx = make_hom_context(der, 4, 1);
  CHECK(taylor_expand(f.parse("y^2"), ctx).to_string() == "y^2 + 2*y*w + w^2");

  auto sigma = shift_action(f);
  auto ectx = make_hom_context(sigma, 0, 4);
  CHECK(taylor_expand(f.var(0), ectx).to_string() == "(y, y + 1, y + 2, y + 3)");

  auto triv = trivial_action(f);
  auto tctx = make_hom_context(triv, 0, 1);
  CHECK(taylor_expand(f.parse("1/y"), tctx) == rho0(f.parse("1/y"), tctx));

  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto ictx = make_hom_context(th, 2, 1);
  CHECK(taylor_expand(f.parse("1/y"), ictx).to_string() == "1/y - 1/y^2*t + 1/y^3*t^2");
}

TEST_CASE("expansions are multiplicative") {
  std::mt19937 rng(17);
  auto f = FieldDesc::make({}, {"y", "z"}, 0);
  std::vector<HomCtxPtr> ctxs = {
      make_hom_context(iterative_action(f, {"t"}, {{"y", "y + t"}, {"z", "z*exp(t)"}}), 5, 1),
      make_hom_context(derivation_action(f, {{"y", "z"}, {"z", "1"}}), 4, 1),
      make_hom_context(monoid_action(f, MonoidKind::End, {make_gen(f, "s", {{"y", "2*y"}, {"z", "z + y"}}, MonoidKind::End)}), 0, 4),
  };
  for (const auto& ctx : ctxs) {
    TaylorMap rho(ctx);
    for (int i = 0; i < 100; ++i) {
      RatFunc a = random_ratfunc(rng, f), b = random_ratfunc(rng, f);
      REQUIRE(rho.expand(a * b) == rho.expand(a) * rho.expand(b));
    }
  }
}

TEST_CASE("characteristic 2 expansion stays multiplicative") {
  std::mt19937 rng(19);
  auto f = qy(2);
  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto ctx = make_hom_context(th, 6, 1);
  CHECK(th->apply(DElem{{1}, {}}, f.parse("y^2")).is_zero());
  CHECK(th->apply(DElem{{2}, {}}, f.parse("y^2")).is_one());
  for (int i = 0; i < 100; ++i) {
    RatFunc a = random_ratfunc(rng, f), b = random_ratfunc(rng, f);
    REQUIRE(taylor_expand(a * b, ctx) == taylor_expand(a, ctx) * taylor_expand(b, ctx));
  }
}

TEST_CASE("rho is D-equivariant for the internal action") {
  std::mt19937 rng(23);
  auto f = qy();
  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto a = std::make_shared<ActionSpec>(*th);
  a->monoid = MonoidKind::End;
  a->gens = {make_gen(f, "sigma", {{"y", "y + 1"}}, MonoidKind::End)};
  auto ctx = make_hom_context(a, 5, 4);
  for (int trial = 0; trial < 10; ++trial) {
    RatFunc x = random_ratfunc(rng, f);
    HomElement rx = taylor_expand(x, ctx);
    for (const auto& d : a->basis(2, 2)) {
      HomElement lhs = psi_int(d, rx);
      CHECK(lhs == taylor_expand(a->apply(d, x), lhs.ctx()));
    }
  }
}

TEST_CASE("universal property of rho") {
  auto f = qy();
  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto ctx = make_hom_context(th, 4, 1);
  std::vector<RatFunc> samples = {f.parse("y^2"), f.parse("1/(y+1)"), f.parse("(y^3 - 2)/y")};

  auto rep = check_rho_universal(ctx, {taylor_expand(f.var(0), ctx)}, samples);
  CHECK(rep.pass);
  CHECK(rep.lambda[0] == f.var(0));

  // Lambda = Hom(D, g) o rho for g: y -> z^2 into Q(z).
  auto B = FieldDesc::make({}, {"z"}, 0);
  RatFunc gz = B.parse("z^2");
  HomElement lam = hom_map(taylor_expand(f.var(0), ctx), {gz});
  auto rep2 = check_rho_universal(ctx, {lam}, samples);
  CHECK(rep2.pass);
  CHECK(rep2.lambda[0] == gz);

  auto rep3 = check_rho_universal(ctx, {rho0(f.var(0), ctx)}, samples);
  CHECK_FALSE(rep3.pass);
  CHECK(rep3.witness.rfind("a=y^2", 0) == 0);
}

TEST_CASE("mu_Au on simple tensors") {
  auto f = qy();
  auto th = iterative_action(f, {"t"}, {{"y", "y + t"}});
  auto thu = iterative_action(f, {"w"}, {{"y", "y + w"}});
  auto ctx = make_hom_context(th, 4, 1);
  auto target = make_hom_context(th, 4, 1, {"w", "e"}, {Constraint{{0, 1}, 4}, Constraint{{1}, 1}});
  auto one = Poly<RatFunc>::constant(target->sp, f.one());
  auto x = mu_Au({{taylor_expand(f.var(0), ctx), one}}, *thu, target);
  CHECK(x.values()[0] == parse_series("y + w + t", target->sp, f.vars, 0));

  auto wv = parse_series("w", target->sp, f.vars, 0);
  CHECK(mu_Au({{rho0(f.one(), ctx), wv}}, *thu, target) == HomElement::constant(target, wv));
  auto c = f.parse("1/y");
  CHECK(mu_Au({{rho0(c, ctx), one}}, *thu, target).values()[0] == parse_series("1/(y + w)", target->sp, f.vars, 0));

  // Injective on {1, rho(y), rho(y)^2} (x) {1, e, w}.
  std::vector<HomElement> imgs;
  auto ry = taylor_expand(f.var(0), ctx);
  for (const auto& h : {unit_hom(ctx), ry, ry * ry})
    for (const char* a : {"1", "e", "w", "e*w"})
      imgs.push_back(mu_Au({{h, parse_series(a, target->sp, f.vars, 0)}}, *thu, target));
  CHECK(l_rank(imgs) == imgs.size());
}

TEST_CASE("linear disjointness witness") {
  auto f = qy();
  auto th = iterative_action(f, {"t"}, {{"y", "y*exp(t)"}});
  auto ctx = make_hom_context(th, 6, 1);
  auto ry = taylor_expand(f.var(0), ctx);
  CHECK(l_rank({unit_hom(ctx), ry, ry * ry, ry.pow(3)}) == 4);
  CHECK(l_rank({ry, ry * rho0(f.parse("y"), ctx)}) == 1);
}
