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

#include "modalg/taylor.hpp"

namespace modalg {

// L = K(x) with K the base variables of `field`, D acting through `action`,
// and a separating transcendence basis u of L over K.
struct ExtensionDesc {
  FieldDesc field;
  ActionPtr action;
  std::vector<RatFunc> u;

  std::size_t n() const { return u.size(); }
  std::vector<std::string> wnames() const;
};

ExtensionDesc make_extension(const ActionPtr& action, const std::vector<std::string>& u);

// theta_u with theta_u(u_i) = u_i + w_i, K-linear.  Throws math_error("separability")
// when #u differs from the number of generators or the Jacobian is singular.
ActionPtr make_theta_u(const ExtensionDesc& ext);

// All theta^(k)(f), |k| <= order, coefficientwise; keyed by k.
std::map<Exp, HomElement> theta_closure(const ActionSpec& th, const HomElement& f, int order);

struct HullGen {
  std::string name;
  HomElement value;
};

struct HullPresentation {
  ExtensionDesc ext;
  ActionPtr theta_u;
  HomCtxPtr ctx;
  std::vector<HullGen> kcal;  // rho0(L) generators, then rho(K) generators
  std::vector<HullGen> lcal;  // rho0(L), rho(L), then theta_u-closure additions
  bool stabilized = true;
  int horizon = 0;
};

HullPresentation hull_generators(const ExtensionDesc& ext, int horizon, int h = 1);

// True if x lies in the L-span of the products of at most `degree` of `gens`.
bool in_l_span(const HomElement& x, const std::vector<HomElement>& gens, int degree);

// X_a[k] stands for theta_u^(k)(rho(a)); rho(s) for a base variable s with
// non-trivial expansion.
struct RelSymbol {
  std::string name;
  int var = 0;  // field variable
  Exp k;        // empty for rho(s)
  bool base = false;
};

struct RelationSet {
  SpacePtr sp;  // one variable per symbol
  std::vector<RelSymbol> symbols;
  std::vector<Poly<RatFunc>> relations;
  int diff_order = 0;
  int degree = 0;
  int horizon = 0;  // sampling horizon used
  int keys = 0;
  std::size_t monomials = 0;
};

RelationSet find_relations(const HullPresentation& hull, int diff_order, int degree);
// Values of the symbols in ctx (same action as the hull).
std::vector<HomElement> symbol_values(const HullPresentation& hull, const RelationSet& rs, const HomCtxPtr& ctx);
HomElement eval_relation(const Poly<RatFunc>& rel, const std::vector<HomElement>& values);

// phi with phi(theta_u(v_i) - v_i) = w_i, so that theta_v = phi o theta_u.
std::vector<Poly<RatFunc>> change_basis(const ExtensionDesc& ext, const std::vector<RatFunc>& v, int horizon);
// phi applied to a series in the w-variables.
Poly<RatFunc> apply_change(const std::vector<Poly<RatFunc>>& phi, const Poly<RatFunc>& f);

}  // namespace modalg
