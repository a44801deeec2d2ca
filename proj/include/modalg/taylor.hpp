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

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "modalg/actions.hpp"

namespace modalg {

// rho(a): d -> d.a, realized per monoid key as a series in the t-variables.
HomElement taylor_expand(const RatFunc& a, const HomCtxPtr& ctx);
// rho0(a): d -> eps(d) a.
HomElement rho0(const RatFunc& a, const HomCtxPtr& ctx);

// Memoized taylor_expand, keyed by the normalized printed form.
class TaylorMap {
 public:
  explicit TaylorMap(HomCtxPtr ctx) : ctx_(std::move(ctx)) {}
  const HomCtxPtr& ctx() const { return ctx_; }
  HomElement expand(const RatFunc& a) const;
  std::size_t cache_size() const;

 private:
  HomCtxPtr ctx_;
  mutable std::mutex m_;
  mutable std::map<std::string, HomElement> cache_;
};

// Coefficientwise action of an iterative derivation on Hom(D, L).
HomElement theta_apply(const ActionSpec& th, const Exp& k, const HomElement& f);
// Coefficientwise ring map Hom(D, lambda) with lambda given on the variables of f's field.
HomElement hom_map(const HomElement& f, const std::vector<RatFunc>& lambda);

struct UniversalReport {
  bool pass = true;
  std::vector<RatFunc> lambda;  // ev_1 o Lambda on the generators
  std::string witness;
  int checked = 0;
};

// Lambda: A -> Hom(D, B) given on the variables of A (values over B's field).
// Checks Lambda = Hom(D, ev_1 o Lambda) o rho on the samples.
UniversalReport check_rho_universal(const HomCtxPtr& ctx, const std::vector<HomElement>& lambda_gens,
                                    const std::vector<RatFunc>& samples);
// Lambda extended multiplicatively from its values on the variables.
HomElement lambda_apply(const std::vector<HomElement>& lambda_gens, const RatFunc& a);

// One tensor f (x) a with f in Hom(D, L) and a in A[[w]] (a lives in target->sp, t-free).
struct TensorTerm {
  HomElement f;
  Poly<RatFunc> a;
};

// mu_{A,u}: sum f_i (x) a_i -> sum theta_u(f_i) rho0(a_i) in Hom(D, A[[w]]).
HomElement mu_Au(const std::vector<TensorTerm>& x, const ActionSpec& theta_u, const HomCtxPtr& target);

// Rank over L of Hom(D, L)-elements, read from their (key, t-exponent) coordinates.
std::size_t l_rank(const std::vector<HomElement>& xs);
// Coordinates of f as L-entries, in a fixed order over keys and t-monomials of ctx.
std::vector<RatFunc> coordinates(const HomElement& f);

}  // namespace modalg
