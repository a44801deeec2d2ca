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

#include "modalg/matrix.hpp"
#include "modalg/umemura.hpp"

namespace modalg {

// L = k(x) with R = k[x, Laurent inverses] = k[X, 1/det X]; K = k.
struct PVData {
  ActionPtr action;
  Matrix<RatFunc> X;
  std::vector<std::string> u;  // transcendence basis for the comparison

  const FieldDesc& field() const { return action->field; }
};

// Entries are parsed in the field of the action; u defaults to the generators.
PVData make_pv(const ActionPtr& action, const std::vector<std::vector<std::string>>& X,
               std::vector<std::string> u = {});
// The field without generators and X = [1].
PVData trivial_pv(std::uint32_t p = 0);

struct PVCheck {
  std::string name;
  bool pass = true;
  std::string detail;
};

struct PVReport {
  bool pass = true;
  std::vector<PVCheck> checks;
};

struct HopfPresentation {
  int degree = 0;
  SpacePtr tensor;  // x@1..., x@2... for R (x) R
  SpacePtr hsp;     // h or h1..hr
  SpacePtr hhsp;    // left and right copies of the h's
  std::vector<RatFunc> gens;  // in tensor
  std::vector<bool> unit;     // generator invertible in R (x) R
  std::vector<RatFunc> delta;  // in hhsp
  std::vector<Scalar> eps;
  std::vector<RatFunc> antipode;  // in hsp

  std::vector<std::string> elements;  // e.g. "1⊗y - y⊗1"
  std::vector<std::string> comul;     // e.g. "h⊗1 + 1⊗h"
  std::vector<std::string> counit;
  std::vector<std::string> antipodes;
  std::vector<std::string> kinds;      // "primitive", "group-like" or ""
  std::vector<std::string> relations;  // among the generators, to the degree bound
  std::vector<PVCheck> checks;         // Hopf axioms on generators
  std::string note;                    // set when no non-constant generator is found

  std::vector<std::string> names() const { return hsp->names(); }
};

// Constants of R (x)_K R with the tensor action and their Hopf structure.
HopfPresentation compute_H(const PVData& data, int degree);
// a (x) h -> (a (x) 1) h on monomials to the degree bound: injective and onto.
PVCheck mu_check(const PVData& data, const HopfPresentation& H, int degree);

PVReport pv_verify(const PVData& data, int degree);

// sigma(X (x) 1) = (X (x) 1)(1 (x) M) over the universal test algebra of the given order.
struct GaloisPoints {
  bool formal = true;
  int order = 2;
  SpacePtr sp;  // free parameters
  std::vector<std::string> params;
  Matrix<Poly<RatFunc>> M{0, 0, Poly<RatFunc>(nullptr, RatFunc())};
  std::vector<std::string> relations;     // relations among the entries of X
  std::vector<std::string> automorphism;  // e.g. "sigma(y ⊗ 1) = y ⊗ (1 + m11)"
  std::string condition;                  // side condition of non-formal points
  std::string obstruction;

  std::string shape() const;  // M with ascending entries
};

// Non-formal points are computed for A = k when the relations among the entries of X are linear.
GaloisPoints galois_points(const PVData& data, int order, bool formal = true);
// Free parameters of the formal points over L[eps]/(eps^2).
int lie_dim(const PVData& data);

struct CompareReport {
  bool bijection = false;
  bool homomorphism = false;
  std::string kpoint;  // e.g. "y = 0"
  std::string umemura_shape;
  std::string umemura_tag;
  std::string galois_shape;
  std::string matrix;            // M(Phi) from the expansion formula
  std::vector<std::string> map;  // e.g. "m12 = a0"
  std::string law;               // order in which M turns composition into products
  std::string note;
};

CompareReport compare(const PVData& data, int order = 2, int horizon = 4, int diff_order = 2);

}  // namespace modalg
