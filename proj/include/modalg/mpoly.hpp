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

#include "modalg/poly.hpp"

namespace modalg {

using MPoly = Poly<Scalar>;

inline MPoly mpoly_constant(const SpacePtr& sp, const Scalar& c) { return MPoly::constant(sp, c); }
inline MPoly mpoly_var(const SpacePtr& sp, int v, std::uint32_t p) {
  return MPoly::variable(sp, v, Scalar(1, p));
}

MPoly derivative(const MPoly& f, int v);

// Quotient when b divides a exactly; throws otherwise.
MPoly exact_div(const MPoly& a, const MPoly& b);
// Quotient if b divides a, nullopt otherwise.
std::optional<MPoly> try_div(const MPoly& a, const MPoly& b);

// Monic (leading coefficient 1) greatest common divisor.
MPoly gcd(const MPoly& a, const MPoly& b);

MPoly make_monic(const MPoly& f);

// Coefficients of f as polynomial in v (index = power of v), v removed.
std::vector<MPoly> to_univariate(const MPoly& f, int v);
MPoly from_univariate(const std::vector<MPoly>& cs, int v, const SpacePtr& sp);

bool is_monomial(const MPoly& f);

}  // namespace modalg
