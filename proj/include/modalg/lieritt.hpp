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
#include <memory>
#include <string>
#include <vector>

#include "modalg/actions.hpp"

namespace modalg {

// L[eps_1..eps_r] modulo all eps-monomials of degree >= order.
struct NilAlgebra {
  FieldDesc base;
  std::vector<std::string> eps;
  int order = 3;
};

// Gamma_n(A) truncated at joint (w, eps)-degree <= horizon.
struct GammaSpace {
  NilAlgebra A;
  std::size_t n = 1;
  int horizon = 0;
  SpacePtr sp;  // eps..., w...
  std::vector<int> wvars;
  std::vector<int> epsvars;
};
using GammaPtr = std::shared_ptr<const GammaSpace>;

GammaPtr make_gamma(const NilAlgebra& A, std::size_t n, int horizon);
std::vector<std::string> w_names(std::size_t n);

struct InfTransform {
  GammaPtr g;
  std::vector<Poly<RatFunc>> phi;

  std::string to_string() const;
  bool operator==(const InfTransform& o) const { return phi == o.phi; }
};

// Series over g grouped by w-monomial, e.g. "y*a1 + (1 + a1)*w".
std::string format_series(const GammaSpace& g, const Poly<RatFunc>& f);

InfTransform identity_transform(const GammaPtr& g);
// Components parsed in the variables of g (eps names, w or w1..wn, field variables).
InfTransform parse_transform(const GammaPtr& g, const std::vector<std::string>& comps);
// Throws math_error("gamma") unless phi_i - w_i has all coefficients in N(A).
void check_transform(const InfTransform& f);
InfTransform compose(const InfTransform& phi, const InfTransform& psi);
InfTransform invert(const InfTransform& phi);
// Image in Gamma_n(A/N(A)).
InfTransform reduce(const InfTransform& phi);

// Differential polynomials in Y_i^(k) with coefficients in L[[w]].
struct DiffRing {
  FieldDesc L;
  std::size_t n = 1;
  int order = 0;
  int horizon = 0;
  SpacePtr sp;  // Y symbols (highest order first), then w...
  std::vector<std::pair<int, Exp>> syms;  // per Y variable: component and multi-index
  std::vector<int> wvars;
};
using DiffRingPtr = std::shared_ptr<const DiffRing>;

// Truncated at joint degree <= horizon in w and the underived Y_i (Y_i evaluates to w_i + ...).
DiffRingPtr make_diff_ring(const FieldDesc& L, std::size_t n, int order, int horizon);
// The underived Y_i followed by the w-variables.
std::vector<int> diff_weight_vars(const DiffRing& r);
// "Y", "Y[2]" for n = 1; "Y1", "Y2[1,0]" otherwise.
std::string y_name(std::size_t n, int i, const Exp& k);

struct DiffPoly {
  DiffRingPtr ring;
  Poly<RatFunc> f;

  std::string to_string() const { return modalg::to_string(f); }
  int order() const;  // largest |k| occurring
};

DiffPoly parse_diffpoly(const DiffRingPtr& ring, const std::string& text);
// theta^(l) acting by theta(w) = w + s, theta(Y^(k)) = sum binom(k+l, k) Y^(k+l) s^l.
DiffPoly diffpoly_theta(const DiffPoly& F, const Exp& l);

// Hasse derivative theta_w^(k) of a series in the w-variables of g.
Poly<RatFunc> hasse(const GammaSpace& g, const Poly<RatFunc>& f, const Exp& k);
// F with Y_i^(k) replaced by theta^(k)(phi_i); exact to joint degree horizon - F.order().
Poly<RatFunc> diffpoly_eval(const DiffPoly& F, const InfTransform& phi);

struct LieRittIdeal {
  DiffRingPtr ring;
  std::vector<DiffPoly> gens;
};

struct ZeroSet {
  bool consistent = true;
  std::vector<std::string> params;          // free nilpotent parameters
  std::vector<std::string> beyond_horizon;  // unknowns no equation reaches
  std::string obstruction;                  // set when a higher layer has no solution
  InfTransform general;                     // Phi in the universal test algebra on params
  int horizon = 0;
  int order = 0;
  std::size_t equations = 0;

  std::string shape() const;
};

// Phi = w + sum a_k w^k with symbolic a_k in the universal test algebra of the given order.
ZeroSet zero_set_solve(const LieRittIdeal& I, int order, int horizon);

struct GroupTag {
  std::string tag;
  std::vector<std::string> law;  // c_j(a, b) for Phi(a) o Phi(b) = Phi(c)
};

GroupTag identify_formal_group(const ZeroSet& z);

// f_{i,l}(u, v) with psi_i(phi) = sum_l f_{i,l} w^l, phi_j = sum u_{j,k} w^k, psi_i = sum v_{i,k} w^k.
struct GroupLaw {
  SpacePtr sp;  // u..., v...
  std::size_t n = 1;
  int horizon = 0;
  std::map<std::pair<int, Exp>, MPoly> coeffs;
};

GroupLaw group_law_coeffs(std::size_t n, int horizon);
std::string u_name(std::size_t n, int j, const Exp& k);

}  // namespace modalg
