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
#include "modalg/parse.hpp"
#include "modalg/series.hpp"

using namespace modalg;

namespace {

using S = Poly<Scalar>;

SpacePtr wspace(int n, int horizon) {
  std::vector<std::string> names;
  std::vector<int> vars;
  for (int i = 0; i < n; ++i) {
    names.push_back(n == 1 ? "w" : "w" + std::to_string(i + 1));
    vars.push_back(i);
  }
  return make_space(names, {Constraint{vars, horizon}});
}

S random_series(std::mt19937& rng, const SpacePtr& sp, bool zero_const, int id_var = -1) {
  std::uniform_int_distribution<int> c(-3, 3);
  S f(sp, Scalar());
  const int n = static_cast<int>(sp->size());
  const int N = sp->constraints()[0].bound;
  std::function<void(Exp&, int, int)> each = [&](Exp& e, int v, int left) {
    if (v == n) {
      int d = total_degree(e);
      if (zero_const && d == 0) return;
      if (id_var >= 0 && d == 1) return;
      f.add_term(e, Scalar(c(rng)));
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      each(e, v + 1, left - k);
    }
    e[v] = 0;
  };
  Exp e(n, 0);
  each(e, 0, N);
  if (id_var >= 0) f += S::variable(sp, id_var, Scalar(1));
  return f;
}

}  // namespace

TEST_CASE("formal inverse of w + w^2 matches Catalan numbers") {
  auto sp = wspace(1, 4);
  S f = S::variable(sp, 0, Scalar(1)) + S::variable(sp, 0, Scalar(1)).pow(2);
  auto g = formal_inverse<Scalar>({f}, {0});
  // Lagrange inversion oracle: (-1)^(k-1) C(2k-2, k-1)/k.
  for (int k = 1; k <= 4; ++k) {
    Scalar cat = binom(2 * k - 2, k - 1, 0) / Scalar(k);
    if (k % 2 == 0) cat = -cat;
    CHECK(g[0].coeff({k}) == cat);
  }
  CHECK(to_string(g[0], true) == "w - w^2 + 2*w^3 - 5*w^4");
}

TEST_CASE("formal inverse rejects a singular Jacobian") {
  auto sp = wspace(1, 4);
  S f = S::variable(sp, 0, Scalar(1)).pow(2);
  CHECK_THROWS_AS(formal_inverse<Scalar>({f}, {0}), not_invertible);
}

TEST_CASE("composition with a non-nilpotent constant term is rejected") {
  auto sp = wspace(1, 4);
  S f = S::variable(sp, 0, Scalar(1)).pow(2);
  S one_plus_w = S::constant(sp, Scalar(1)) + S::variable(sp, 0, Scalar(1));
  CHECK_THROWS_AS(series_compose(f, {{0, one_plus_w}}, sp), not_invertible);
}

TEST_CASE("reciprocal and exp") {
  auto sp = wspace(1, 6);
  auto field = make_space({"y"});
  auto r = parse_series("1/(1 - w)", sp, field, 0);
  for (int k = 0; k <= 6; ++k) CHECK(r.coeff({k}).is_one());
  auto e = parse_series("exp(w) * exp(-w)", sp, field, 0);
  CHECK(e == parse_series("1", sp, field, 0));
  auto q = parse_series("1/(y + w)", sp, field, 0);
  CHECK(q.coeff({3}) == parse_ratfunc("-1/y^4", field, 0));
  CHECK_THROWS_AS(parse_series("exp(w)", sp, field, 3), math_error);
  auto sp2 = wspace(1, 2);
  CHECK_NOTHROW(parse_series("exp(w)", sp2, field, 3));
}

TEST_CASE("composition is associative on random series") {
  std::mt19937 rng(3);
  for (int n : {1, 2}) {
    auto sp = wspace(n, 5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<S> f, g, h;
      for (int i = 0; i < n; ++i) {
        f.push_back(random_series(rng, sp, false));
        g.push_back(random_series(rng, sp, true));
        h.push_back(random_series(rng, sp, true));
      }
      auto comp = [&](const std::vector<S>& a, const std::vector<S>& b) {
        std::map<int, S> subs;
        for (int i = 0; i < n; ++i) subs.emplace(i, b[i]);
        std::vector<S> out;
        for (const auto& x : a) out.push_back(series_compose(x, subs, sp));
        return out;
      };
      CHECK(comp(comp(f, g), h) == comp(f, comp(g, h)));
    }
  }
}

TEST_CASE("formal inverse is a two-sided inverse") {
  std::mt19937 rng(5);
  for (int n : {1, 2}) {
    auto sp = wspace(n, 5);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<S> phi;
      for (int i = 0; i < n; ++i) phi.push_back(random_series(rng, sp, true, i));
      std::vector<int> vars;
      for (int i = 0; i < n; ++i) vars.push_back(i);
      auto psi = formal_inverse(phi, vars);
      std::map<int, S> a, b;
      for (int i = 0; i < n; ++i) {
        a.emplace(i, psi[i]);
        b.emplace(i, phi[i]);
      }
      for (int i = 0; i < n; ++i) {
        CHECK(series_compose(phi[i], a, sp) == S::variable(sp, i, Scalar(1)));
        CHECK(series_compose(psi[i], b, sp) == S::variable(sp, i, Scalar(1)));
      }
    }
  }
}
