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
#include "modalg/pv.hpp"

using namespace modalg;

namespace {

PVData additive() {
  FieldDesc f = FieldDesc::make({}, {"y"}, 0);
  return make_pv(iterative_action(f, {"t"}, {{"y", "y + t"}}), {{"1", "y"}, {"0", "1"}});
}

FieldDesc laurent_y() {
  FieldDesc f = FieldDesc::make({}, {"y"}, 0);
  f.laurent = {0};
  return f;
}

PVData exponential() { return make_pv(iterative_action(laurent_y(), {"t"}, {{"y", "y*exp(t)"}}), {{"y"}}); }

PVData difference() {
  FieldDesc f = laurent_y();
  return make_pv(monoid_action(f, MonoidKind::Aut, {make_gen(f, "sigma", {{"y", "2*y"}}, MonoidKind::Aut)}, 4),
                 {{"y"}});
}

const PVCheck& check(const PVReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return c;
  FAIL("missing check " << name);
  return r.checks.front();
}

void all_pass(const std::vector<PVCheck>& cs) {
  for (const auto& c : cs) CHECK_MESSAGE(c.pass, c.name << ": " << c.detail);
}

}  // namespace

TEST_CASE("PV axioms of the worked examples") {
  auto a = pv_verify(additive(), 3);
  all_pass(a.checks);
  CHECK(a.pass);
  CHECK(check(a, "log-derivative").detail.rfind("theta^(1)(X)X^-1 = [[0, 1], [0, 0]]", 0) == 0);
  auto e = pv_verify(exponential(), 3);
  CHECK(e.pass);
  CHECK(check(e, "log-derivative").detail.rfind("theta^(1)(X)X^-1 = [[1]]", 0) == 0);
  auto d = pv_verify(difference(), 3);
  CHECK(d.pass);
  CHECK(check(d, "log-derivative").detail.find("(X)X^-1 = [[2]]") != std::string::npos);
  CHECK(check(d, "injective").pass);
}

TEST_CASE("non-constant log-derivative fails the PV check") {
  FieldDesc f = FieldDesc::make({}, {"y"}, 0);
  // theta(y^2) X^-1 = 2/y + ... is not in K.
  auto r = pv_verify(make_pv(iterative_action(f, {"t"}, {{"y", "y + t"}}), {{"y^2"}}), 2);
  CHECK_FALSE(r.pass);
  CHECK_FALSE(check(r, "log-derivative").pass);
}

TEST_CASE("Hopf algebra of the additive example") {
  auto H = compute_H(additive(), 4);
  REQUIRE(H.gens.size() == 1);
  CHECK(H.elements[0] == "1⊗y - y⊗1");
  CHECK(H.comul[0] == "h⊗1 + 1⊗h");
  CHECK(H.kinds[0] == "primitive");
  CHECK(H.counit[0] == "0");
  CHECK(H.antipodes[0] == "-h");
  CHECK(H.relations.empty());
  all_pass(H.checks);
  CHECK(mu_check(additive(), H, 3).pass);
}

TEST_CASE("Hopf algebra of the exponential and difference examples") {
  for (const auto& data : {exponential(), difference()}) {
    auto H = compute_H(data, 4);
    REQUIRE(H.gens.size() == 1);
    CHECK(H.elements[0] == "y^-1⊗y");
    CHECK(H.comul[0] == "h⊗h");
    CHECK(H.kinds[0] == "group-like");
    CHECK(H.counit[0] == "1");
    CHECK(H.antipodes[0] == "h^-1");
    CHECK(H.unit[0]);
    all_pass(H.checks);
    CHECK(mu_check(data, H, 3).pass);
  }
}

TEST_CASE("trivial extension") {
  auto t = trivial_pv();
  CHECK(pv_verify(t, 3).pass);
  auto H = compute_H(t, 3);
  CHECK(H.gens.empty());
  CHECK_FALSE(H.note.empty());
  CHECK(lie_dim(t) == 0);
  auto c = compare(t);
  CHECK(c.bijection);
  CHECK(c.umemura_tag == "trivial");
}

TEST_CASE("formal Galois points") {
  auto a = galois_points(additive(), 2);
  CHECK(a.params == std::vector<std::string>{"m12"});
  CHECK(a.shape() == "[[1, m12], [0, 1]]");
  REQUIRE(a.automorphism.size() == 1);
  CHECK(a.automorphism[0] == "sigma(y ⊗ 1) = y ⊗ 1 + 1 ⊗ m12");
  CHECK(a.obstruction.empty());
  auto e = galois_points(exponential(), 2);
  CHECK(e.params == std::vector<std::string>{"m11"});
  CHECK(e.shape() == "[[1 + m11]]");
  CHECK(e.automorphism[0] == "sigma(y ⊗ 1) = y ⊗ (1 + m11)");
  // No nilpotents.
  CHECK(galois_points(additive(), 1).params.empty());
  CHECK(lie_dim(additive()) == 1);
  CHECK(lie_dim(exponential()) == 1);
  CHECK(lie_dim(difference()) == 1);
}

TEST_CASE("points over the constants") {
  auto a = galois_points(additive(), 1, false);
  CHECK(a.shape() == "[[1, m12], [0, 1]]");
  CHECK(a.condition == "det(M) = 1 != 0");
  auto e = galois_points(exponential(), 1, false);
  CHECK(e.shape() == "[[m11]]");
}

TEST_CASE("comparison with the Umemura points") {
  auto a = compare(additive());
  CHECK(a.umemura_shape == "a0 + w");
  CHECK(a.matrix == "[[1, a0], [0, 1]]");
  CHECK(a.map == std::vector<std::string>{"m12 = a0"});
  CHECK(a.bijection);
  CHECK(a.homomorphism);
  CHECK(a.kpoint == "y = 0");
  auto e = compare(exponential());
  CHECK(e.umemura_shape == "y*a1 + (1 + a1)*w");
  CHECK(e.matrix == "[[1 + a1]]");
  CHECK(e.map == std::vector<std::string>{"m11 = a1"});
  CHECK(e.bijection);
  CHECK(e.homomorphism);
  CHECK(e.kpoint == "y = 1");
}
