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

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modalg/errors.hpp"
#include "modalg/scalar.hpp"
#include "modalg/space.hpp"

namespace modalg {

namespace detail {
template <class T>
bool coeff_zero(const T& c) {
  return is_zero(c);
}
}  // namespace detail

// Sparse polynomial (or truncated series, when the space has constraints)
// with coefficients in C.
template <class C>
class Poly {
 public:
  using Terms = std::map<Exp, C, GrLex>;

  Poly(SpacePtr sp, C zero) : sp_(std::move(sp)), zero_(std::move(zero)) {}

  static Poly constant(SpacePtr sp, const C& c) {
    Poly p(sp, zero_like(c));
    p.add_term(Exp(p.sp_->size(), 0), c);
    return p;
  }
  static Poly monomial(SpacePtr sp, Exp e, const C& c) {
    Poly p(sp, zero_like(c));
    p.add_term(std::move(e), c);
    return p;
  }
  static Poly variable(SpacePtr sp, int v, const C& one) {
    Exp e(sp->size(), 0);
    e[v] = 1;
    return monomial(sp, std::move(e), one);
  }

  const SpacePtr& space() const { return sp_; }
  const C& zero_coeff() const { return zero_; }
  C one_coeff() const { return one_like(zero_); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  C coeff(const Exp& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? zero_ : it->second;
  }
  C constant_term() const { return coeff(Exp(sp_->size(), 0)); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && modalg::total_degree(terms_.begin()->first) == 0);
  }
  const Exp& leading_exp() const { return terms_.rbegin()->first; }
  const C& leading_coeff() const { return terms_.rbegin()->second; }

  int degree(int v) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, modalg::total_degree(e));
    return d;
  }
  int min_degree_in(const std::vector<int>& vars) const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int k = degree_in(e, vars);
      if (d < 0 || k < d) d = k;
    }
    return d;
  }
  bool involves(int v) const {
    for (const auto& [e, c] : terms_)
      if (e[v]) return true;
    return false;
  }

  void add_term(Exp e, const C& c) {
    if (detail::coeff_zero(c) || !sp_->admits(e)) return;
    auto [it, fresh] = terms_.try_emplace(std::move(e), c);
    if (!fresh) {
      it->second += c;
      if (detail::coeff_zero(it->second)) terms_.erase(it);
    }
  }
  void set_term(const Exp& e, const C& c) {
    if (detail::coeff_zero(c))
      terms_.erase(e);
    else if (sp_->admits(e))
      terms_[e] = c;
  }

  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(const C& s) {
    if (detail::coeff_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= s;
      if (detail::coeff_zero(it->second))
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const C& s) { return a *= s; }
  friend Poly operator*(const C& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.sp_, a.zero_);
    if (a.is_zero() || b.is_zero()) return r;
    const std::size_t n = a.sp_->size();
    Exp e(n);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
        if (!a.sp_->admits(e)) continue;
        auto [it, fresh] = r.terms_.try_emplace(e, ca);
        if (fresh)
          it->second *= cb;
        else
          it->second += ca * cb;
      }
    }
    for (auto it = r.terms_.begin(); it != r.terms_.end();) {
      if (detail::coeff_zero(it->second))
        it = r.terms_.erase(it);
      else
        ++it;
    }
    return r;
  }
  friend bool operator==(const Poly& a, const Poly& b) {
    return same_space(a.sp_, b.sp_) && a.terms_ == b.terms_;
  }

  Poly pow(int k) const {
    Poly r = constant(sp_, one_coeff()), b = *this;
    while (k > 0) {
      if (k & 1) r *= b;
      k >>= 1;
      if (k) b *= b;
    }
    return r;
  }

  // Same terms viewed in another space; variables are matched by name.
  Poly rehome(const SpacePtr& target) const {
    if (same_space(sp_, target)) {
      Poly r = *this;
      r.sp_ = target;
      return r;
    }
    std::vector<int> map(sp_->size());
    for (std::size_t i = 0; i < sp_->size(); ++i) map[i] = target->index(sp_->name(i));
    Poly r(target, zero_);
    for (const auto& [e, c] : terms_) {
      Exp f(target->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (map[i] < 0) throw context_mismatch("variable '" + sp_->name(i) + "' missing in target");
        f[map[i]] = e[i];
      }
      r.add_term(std::move(f), c);
    }
    return r;
  }

  template <class F>
  auto map_coeffs(F f) const {
    using D = decltype(f(zero_));
    Poly<D> r(sp_, f(zero_));
    for (const auto& [e, c] : terms_) r.add_term(e, f(c));
    return r;
  }

  void check(const Poly& o) const {
    if (!same_space(sp_, o.sp_)) throw context_mismatch("polynomials live in different spaces");
  }

 private:
  SpacePtr sp_;
  C zero_;
  Terms terms_;
};

template <class C>
bool is_zero(const Poly<C>& p) {
  return p.is_zero();
}
template <class C>
Poly<C> zero_like(const Poly<C>& p) {
  return Poly<C>(p.space(), p.zero_coeff());
}
template <class C>
Poly<C> one_like(const Poly<C>& p) {
  return Poly<C>::constant(p.space(), p.one_coeff());
}

std::string monomial_string(const Space& sp, const Exp& e);

// Coefficients needing parentheses when followed by a monomial.
inline bool compound(const std::string& s) {
  bool letters = false;
  for (char ch : s)
    if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z')) letters = true;
  if (!letters) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == '+' || s[i] == '-') return true;
  return false;
}

template <class C>
std::string to_string(const Poly<C>& p, bool ascending = false) {
  if (p.is_zero()) return "0";
  std::vector<std::string> parts;
  auto emit = [&](const Exp& e, const C& c) {
    std::string m = monomial_string(*p.space(), e);
    std::string cs = to_string(c);
    std::string t;
    if (m.empty())
      t = cs;
    else if (cs == "1")
      t = m;
    else if (cs == "-1")
      t = "-" + m;
    else if (compound(cs))
      t = "(" + cs + ")*" + m;
    else
      t = cs + "*" + m;
    parts.push_back(t);
  };
  if (ascending)
    for (const auto& [e, c] : p.terms()) emit(e, c);
  else
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) emit(it->first, it->second);
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) {
    if (parts[i][0] == '-' && parts[i].size() > 1 && parts[i][1] != '(' )
      out += " - " + parts[i].substr(1);
    else
      out += " + " + parts[i];
  }
  return out;
}

// Ring homomorphism out of Poly<C>.  Variables with a non-null image are
// replaced, the others are carried to the same-named variable of `target`;
// coefficients go through `cmap`.  Evaluation is nested Horner on the
// substituted variables, so truncation in `target` is applied exactly.
template <class C, class D, class CoeffMap>
Poly<D> substitute(const Poly<C>& f, const SpacePtr& target, const std::vector<const Poly<D>*>& images,
                   const D& dzero, CoeffMap cmap) {
  const Space& src = *f.space();
  std::vector<int> subst, keep_map(src.size(), -1);
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (i < images.size() && images[i]) {
      if (!same_space(images[i]->space(), target))
        throw context_mismatch("substitution image lives in a different space");
      subst.push_back(static_cast<int>(i));
    } else {
      keep_map[i] = target->index(src.name(i));
    }
  }
  // Group terms by the exponent of the substituted variables.
  std::map<Exp, Poly<D>> groups;
  for (const auto& [e, c] : f.terms()) {
    Exp key(subst.size());
    for (std::size_t j = 0; j < subst.size(); ++j) key[j] = e[subst[j]];
    Exp rest(target->size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (keep_map[i] >= 0)
        rest[keep_map[i]] = e[i];
      else if (e[i] && !(i < images.size() && images[i]))
        throw context_mismatch("variable '" + src.name(i) + "' missing in target");
    }
    Poly<D> term = cmap(c);
    if (total_degree(rest) > 0) term = term * Poly<D>::monomial(target, rest, one_like(dzero));
    auto it = groups.find(key);
    if (it == groups.end())
      groups.emplace(std::move(key), std::move(term));
    else
      it->second += term;
  }
  if (subst.empty() || groups.empty()) {
    Poly<D> r(target, dzero);
    for (auto& [k, v] : groups) r += v;
    return r;
  }
  std::vector<std::vector<Poly<D>>> powers(subst.size());
  auto power = [&](std::size_t j, int k) -> const Poly<D>& {
    auto& tab = powers[j];
    if (tab.empty()) tab.push_back(Poly<D>::constant(target, one_like(dzero)));
    while (static_cast<int>(tab.size()) <= k) tab.push_back(tab.back() * *images[subst[j]]);
    return tab[k];
  };
  using Entry = std::pair<const Exp*, const Poly<D>*>;
  std::vector<Entry> entries;
  for (const auto& [k, v] : groups) entries.emplace_back(&k, &v);
  std::function<Poly<D>(std::vector<Entry>&, std::size_t)> eval = [&](std::vector<Entry>& es,
                                                                      std::size_t j) -> Poly<D> {
    if (j == subst.size()) {
      Poly<D> r(target, dzero);
      for (const auto& en : es) r += *en.second;
      return r;
    }
    std::map<int, std::vector<Entry>, std::greater<int>> by;
    for (const auto& en : es) by[(*en.first)[j]].push_back(en);
    std::optional<Poly<D>> acc;
    int prev = 0;
    for (auto& [k, sub] : by) {
      Poly<D> inner = eval(sub, j + 1);
      if (!acc)
        acc = std::move(inner);
      else
        acc = *acc * power(j, prev - k) + inner;
      prev = k;
    }
    if (prev > 0) acc = *acc * power(j, prev);
    return *acc;
  };
  return eval(entries, 0);
}

// Substitution with coefficients embedded as constants.
template <class C>
Poly<C> substitute(const Poly<C>& f, const SpacePtr& target, const std::vector<const Poly<C>*>& images) {
  return substitute(f, target, images, f.zero_coeff(),
                    [&](const C& c) { return Poly<C>::constant(target, c); });
}

// Coefficients of f with respect to the variables `vars`: exponent of vars -> remainder.
template <class C>
std::map<Exp, Poly<C>> split(const Poly<C>& f, const std::vector<int>& vars) {
  std::map<Exp, Poly<C>> out;
  for (const auto& [e, c] : f.terms()) {
    Exp key(vars.size());
    Exp rest = e;
    for (std::size_t j = 0; j < vars.size(); ++j) {
      key[j] = e[vars[j]];
      rest[vars[j]] = 0;
    }
    auto it = out.try_emplace(key, f.space(), f.zero_coeff()).first;
    it->second.add_term(std::move(rest), c);
  }
  return out;
}

}  // namespace modalg
