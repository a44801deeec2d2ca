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

#pragma once

#include <string>
#include <vector>

#include "modalg/hull.hpp"
#include "modalg/lieritt.hpp"

namespace modalg {

struct UmemuraProblem {
  HullPresentation hull;
  RelationSet relations;
  int order = 3;    // nilpotency order of the universal test algebra
  int horizon = 4;  // w-horizon of Gamma_n
};

// Hull at `horizon`, relations of order <= diff_order and degree <= degree.
UmemuraProblem make_umemura_problem(const ExtensionDesc& ext, int horizon, int diff_order = 2, int degree = 1,
                                    int order = 3);

// One generator per D-coefficient of F(theta_u-twisted expansions), monic and deduplicated.
LieRittIdeal umemura_ideal(const UmemuraProblem& pb);

struct UmemuraPoints {
  LieRittIdeal ideal;
  ZeroSet zero_set;
  GroupTag tag;
  // phi(rho(a) (x) 1) for each generator a, e.g. "rho(y) ⊗ (1 + a1)".
  std::vector<std::string> automorphism;
  std::string unexpressed;  // set when some theta_u^(k)(rho(a)) leaves the span used
};

UmemuraPoints umemura_points(const UmemuraProblem& pb);

}  // namespace modalg
