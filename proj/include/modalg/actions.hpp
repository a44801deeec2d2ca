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

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "modalg/ratfunc.hpp"
#include "modalg/series.hpp"

namespace modalg {

// A presented field k(x_1..x_n) with the subset of base (K-) variables and
// the Laurent variables of the distinguished ring R.
struct FieldDesc {
  SpacePtr vars;
  std::uint32_t p = 0;
  std::vector<int> base;
  std::vector<int> laurent;

  static FieldDesc make(std::vector<std::string> base_names, std::vector<std::string> gen_names,
                        std::uint32_t p);
  std::size_t size() const { return vars->size(); }
  bool is_base(int v) const;
  std::vector<int> generators() const;
  RatFunc var(int i) const { return RatFunc::variable(vars, i, p); }
  RatFunc zero() const { return RatFunc(vars, p); }
  RatFunc one() const { return RatFunc::constant(vars, Scalar(1, p)); }
  RatFunc constant(const Scalar& c) const { return RatFunc::constant(vars, c); }
  RatFunc parse(const std::string& s) const;
  // True if f involves only base variables.
  bool in_base(const RatFunc& f) const;
};

enum class DerKind { None, Der, IterDer };
enum class MonoidKind { None, End, Aut, Free };

// Monoid word: exponent {k} for End/Aut, generator indices for Free, {} for None.
using Key = std::vector<int>;

// D-basis element theta^(k) . g
struct DElem {
  Exp k;
  Key word;
  bool operator<(const DElem& o) const { return std::tie(k, word) < std::tie(o.k, o.word); }
  bool operator==(const DElem& o) const = default;
};

struct MonoidGen {
  std::string name;
  std::vector<std::optional<RatFunc>> images;   // per field variable, nullopt = fixed
  std::vector<std::optional<RatFunc>> inverse;  // Aut only
};

// Image of a variable under an iterative derivation, produced at a requested t-space.
using SeriesImage = std::function<Poly<RatFunc>(const SpacePtr&)>;

class ActionSpec {
 public:
  FieldDesc field;
  DerKind der = DerKind::None;
  std::vector<std::string> tnames;
  std::vector<int> caps;  // per t-variable degree caps (D_HD(m)); empty = none
  // Der: der_images[i][v] = d_i(x_v); IterDer: iter_images[v] = theta(x_v).
  std::vector<std::vector<std::optional<RatFunc>>> der_images;
  std::vector<std::optional<SeriesImage>> iter_images;
  MonoidKind monoid = MonoidKind::None;
  std::vector<MonoidGen> gens;
  // Commutation g . theta^(l) = sum_j c theta^(j) . g; absent entries are trivial.
  std::map<std::pair<int, Exp>, std::vector<std::pair<Exp, Scalar>>> rule;
  // Overrides the structured action (negative controls).
  std::function<RatFunc(const DElem&, const RatFunc&)> custom;
  int t_horizon = 6;
  int monoid_horizon = 8;

  std::size_t nt() const { return tnames.size(); }
  std::uint32_t p() const { return field.p; }
  std::string kind_name() const;

  // Space of the t-variables (plus optional extra variables / constraints).
  SpacePtr t_space(int horizon, const std::vector<std::string>& extra = {},
                   const std::vector<Constraint>& extra_cons = {}) const;

  std::vector<Key> keys(int h) const;
  Key key_mul(const Key& a, const Key& b) const;
  int key_len(const Key& k) const;

  RatFunc apply_gen(int g, const RatFunc& a, bool inv = false) const;
  RatFunc apply_word(const Key& w, const RatFunc& a) const;
  RatFunc apply(const DElem& d, const RatFunc& a) const;
  // theta(a) = sum_k theta^(k)(a) t^k (Der: Taylor series), in the t-variables of sp.
  Poly<RatFunc> theta_series(const RatFunc& a, const SpacePtr& sp) const;
  // sum_k D^k(a) t^k / k! by repeated differentiation (Der only).
  Poly<RatFunc> der_series(const RatFunc& a, const SpacePtr& sp) const;

  std::vector<std::pair<Exp, Scalar>> word_rule(const Key& w, const Exp& l) const;
  std::vector<std::tuple<Scalar, DElem, DElem>> coproduct(const DElem& d) const;
  Scalar counit(const DElem& d) const;
  std::vector<DElem> basis(int tdeg, int h) const;
  std::string delem_string(const DElem& d) const;
  std::string key_string(const Key& k) const;
};

using ActionPtr = std::shared_ptr<const ActionSpec>;

// a(images) as a series in sp; variables without an image stay constant.
Poly<RatFunc> expand_ratfunc(const RatFunc& a, const std::vector<const Poly<RatFunc>*>& images, const SpacePtr& sp);

ActionPtr trivial_action(const FieldDesc& f);
// theta(x) from expression strings in the t-variables.
SeriesImage series_image(const std::string& expr, const FieldDesc& f);
ActionPtr iterative_action(const FieldDesc& f, std::vector<std::string> tnames,
                           const std::map<std::string, std::string>& images, int horizon = 6);
ActionPtr derivation_action(const FieldDesc& f, const std::map<std::string, std::string>& images,
                            std::string tname = "t", int horizon = 6);
// Monoid generator from image strings; for Aut an empty inverse map is derived
// when every image is affine in its own variable.
MonoidGen make_gen(const FieldDesc& f, std::string name, const std::map<std::string, std::string>& images,
                   MonoidKind kind, const std::map<std::string, std::string>& inverse = {});
ActionPtr monoid_action(const FieldDesc& f, MonoidKind kind, std::vector<MonoidGen> gens, int h = 8);

// Hom(D, A) realized as series in t per monoid key.
struct HomContext {
  ActionPtr action;
  SpacePtr sp;  // first nt() variables are t
  std::vector<Key> keys;
  std::map<Key, int> index;
  int horizon = 0;
  int h = 0;
  HomContext(ActionPtr a, SpacePtr s, int horizon, int h);
};
using HomCtxPtr = std::shared_ptr<const HomContext>;

HomCtxPtr make_hom_context(const ActionPtr& a, int horizon, int h,
                           const std::vector<std::string>& extra = {},
                           const std::vector<Constraint>& extra_cons = {});

class HomElement {
 public:
  HomElement(HomCtxPtr ctx, std::vector<Poly<RatFunc>> vals) : ctx_(std::move(ctx)), vals_(std::move(vals)) {}
  static HomElement constant(const HomCtxPtr& ctx, const Poly<RatFunc>& c);
  static HomElement constant(const HomCtxPtr& ctx, const RatFunc& c);

  const HomCtxPtr& ctx() const { return ctx_; }
  const std::vector<Poly<RatFunc>>& values() const { return vals_; }
  const Poly<RatFunc>& at(const Key& k) const { return vals_.at(ctx_->index.at(k)); }
  // Value at 1_D.
  RatFunc eval_one() const;
  bool is_zero() const;

  HomElement& operator+=(const HomElement& o);
  HomElement& operator-=(const HomElement& o);
  friend HomElement operator+(HomElement a, const HomElement& b) { return a += b; }
  friend HomElement operator-(HomElement a, const HomElement& b) { return a -= b; }
  // Convolution product (pointwise in monoid keys, series product in t).
  friend HomElement operator*(const HomElement& a, const HomElement& b);
  friend HomElement operator*(HomElement a, const RatFunc& c);
  friend bool operator==(const HomElement& a, const HomElement& b) { return a.vals_ == b.vals_; }
  HomElement pow(int k) const;
  HomElement inverse() const;
  // Re-express in another context with the same keys (variables matched by name).
  HomElement rehome(const HomCtxPtr& ctx) const;

  std::string to_string() const;

 private:
  HomCtxPtr ctx_;
  std::vector<Poly<RatFunc>> vals_;
};

HomElement convolution(const HomElement& f, const HomElement& g);
HomElement unit_hom(const HomCtxPtr& ctx);
// (Psi_int(d) f)(e) = f(e . d)
HomElement psi_int(const DElem& d, const HomElement& f);

struct CheckReport {
  bool pass = true;
  std::string law;
  std::string witness;
  int checked = 0;
};

CheckReport check_measuring(const ActionSpec& a, int depth);
CheckReport check_module_algebra(const ActionSpec& a, int depth);

// Monomials of the distinguished ring up to (Laurent) degree.
std::vector<Exp> ring_monomials(const FieldDesc& f, int degree, const std::vector<int>& vars);
RatFunc monomial_value(const FieldDesc& f, const Exp& e);

// D-elements imposed by constants().
std::vector<DElem> constant_tests(const ActionSpec& a, int horizon);
// k-basis of constants among monomials up to degree.
std::vector<RatFunc> constants(const ActionSpec& a, int degree);
// Reduced basis of the k-linear relations sum_m c_m vals[m] = 0 (vals share one field).
std::vector<std::vector<Scalar>> linear_relations(const std::vector<RatFunc>& vals, std::uint32_t p);
// Coefficient rows of the k-linear system sum_m c_m vals[m] = 0.
std::vector<std::vector<Scalar>> coefficient_rows(const std::vector<RatFunc>& vals, std::uint32_t p);

struct ProductRing {
  FieldDesc factor;
  int count = 1;
  // For each generator: (sigma a)_j = tau_j(a_{source[j]}), tau_j given by images.
  struct Gen {
    std::vector<int> source;
    std::vector<std::vector<std::optional<RatFunc>>> embeddings;  // per factor j; empty = identity
  };
  std::vector<Gen> gens;
  ActionPtr factor_action;  // derivation part acting factorwise; may be null
};

struct SimplicityReport {
  bool simple = false;
  bool injective = true;
  std::vector<std::vector<int>> orbits;
};

SimplicityReport check_product_simplicity(const ProductRing& P);
std::vector<std::vector<RatFunc>> product_constants(const ProductRing& P, int degree);

}  // namespace modalg
