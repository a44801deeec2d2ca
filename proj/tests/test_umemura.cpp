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
#include "modalg/umemura.hpp"

using namespace modalg;

namespace {

FieldDesc qy() { return FieldDesc::make({}, {"y"}, 0); }

ExtensionDesc additive() { return make_extension(iterative_action(qy(), {"t"}, {{"y", "y + t"}}), {"y"}); }
ExtensionDesc exponential() { return make_extension(iterative_action(qy(), {"t"}, {{"y", "y*exp(t)"}}), {"y"}); }

std::vector<std::string> gens(const LieRittIdeal& I) {
  std::vector<std::string> out;
  for (const auto& g : I.gens) out.push_back(g.to_string());
  return out;
}

}  // namespace

TEST_CASE("Umemura ideal of the additive extension") {
  auto pb = make_umemura_problem(additive(), 4, 3);
  CHECK(gens(umemura_ideal(pb)) == std::vector<std::string>{"Y[1] - 1", "Y[2]", "Y[3]"});
  auto pts = umemura_points(pb);
  CHECK(pts.zero_set.shape() == "a0 + w");
  CHECK(pts.tag.tag == "Ĝ_a");
  REQUIRE(pts.automorphism.size() == 1);
  CHECK(pts.automorphism[0] == "phi(rho(y) ⊗ 1) = rho(y) ⊗ 1 + 1 ⊗ a0");
  CHECK(pts.unexpressed.empty());
}

TEST_CASE("Umemura ideal of the exponential extension") {
  auto pb = make_umemura_problem(exponential(), 4, 2);
  CHECK(gens(umemura_ideal(pb)) == std::vector<std::string>{"Y[1]*w + y*Y[1] - Y - y", "Y[2]"});
  auto pts = umemura_points(pb);
  CHECK(pts.zero_set.shape() == "y*a1 + (1 + a1)*w");
  CHECK(pts.tag.tag == "Ĝ_m (via G̃_*)");
  REQUIRE(pts.automorphism.size() == 1);
  CHECK(pts.automorphism[0] == "phi(rho(y) ⊗ 1) = rho(y) ⊗ (1 + a1)");
  CHECK(pts.zero_set.obstruction.empty());
}

TEST_CASE("Umemura functor of a trivial action") {
  auto pb = make_umemura_problem(make_extension(trivial_action(qy()), {"y"}), 3, 1);
  auto I = umemura_ideal(pb);
  CHECK(gens(I) == std::vector<std::string>{"Y - w", "Y[1] - 1"});
  auto pts = umemura_points(pb);
  CHECK(pts.zero_set.shape() == "w");
  CHECK(pts.tag.tag == "trivial");
}

TEST_CASE("no nilpotents give the trivial group") {
  auto pb = make_umemura_problem(additive(), 4, 2, 1, 1);
  auto pts = umemura_points(pb);
  CHECK(pts.zero_set.params.empty());
  CHECK(pts.zero_set.shape() == "w");
  CHECK(pts.tag.tag == "trivial");
}

TEST_CASE("points are functorial in the test algebra") {
  // Solving over order 3 and reducing to order 2 agrees with solving over order 2.
  for (const auto& ext : {additive(), exponential()}) {
    auto p3 = umemura_points(make_umemura_problem(ext, 4, 2, 1, 3));
    auto p2 = umemura_points(make_umemura_problem(ext, 4, 2, 1, 2));
    CHECK(p3.zero_set.params == p2.zero_set.params);
    const auto& g2 = p2.zero_set.general.g;
    for (std::size_t i = 0; i < p3.zero_set.general.phi.size(); ++i)
      CHECK(p3.zero_set.general.phi[i].rehome(g2->sp) == p2.zero_set.general.phi[i]);
  }
}

TEST_CASE("degree-2 relations give the same group") {
  auto pb = make_umemura_problem(exponential(), 4, 2, 2);
  auto pts = umemura_points(pb);
  CHECK(pts.zero_set.shape() == "y*a1 + (1 + a1)*w");
}
