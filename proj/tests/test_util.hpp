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

#include <random>

#include "modalg/actions.hpp"

namespace modalg::testing {

inline MPoly random_mpoly(std::mt19937& rng, const SpacePtr& sp, std::uint32_t p, int terms, int deg,
                          const std::vector<int>& vars = {}) {
  std::uniform_int_distribution<int> c(-4, 4), d(0, deg);
  MPoly f(sp, Scalar(0, p));
  for (int k = 0; k < terms; ++k) {
    Exp e(sp->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (vars.empty() || std::find(vars.begin(), vars.end(), static_cast<int>(i)) != vars.end()) e[i] = d(rng);
    f.add_term(e, Scalar(c(rng), p));
  }
  return f;
}

// Random element with a nonzero denominator.
inline RatFunc random_ratfunc(std::mt19937& rng, const FieldDesc& f, int deg = 2, bool fractions = true) {
  MPoly n = random_mpoly(rng, f.vars, f.p, 3, deg);
  MPoly d = MPoly::constant(f.vars, Scalar(1, f.p));
  if (fractions) {
    d = random_mpoly(rng, f.vars, f.p, 2, 1);
    if (d.is_zero()) d = MPoly::constant(f.vars, Scalar(1, f.p));
  }
  return RatFunc(n, d);
}

}  // namespace modalg::testing
