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
#include <vector>

#include "modalg/matrix.hpp"
#include "modalg/poly.hpp"

namespace modalg {

// True if every term has positive degree in some truncation constraint,
// i.e. the series is nilpotent in its space.
template <class C>
bool in_truncation_ideal(const Poly<C>& g) {
  const auto& cons = g.space()->constraints();
  for (const auto& [e, c] : g.terms()) {
    bool ok = false;
    for (const auto& k : cons)
      if (degree_in(e, k.vars) > 0) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

template <class C>
Poly<C> series_recip(const Poly<C>& f) {
  C c0 = f.constant_term();
  if (!is_unit(c0)) throw not_invertible("series with non-unit constant term");
  Poly<C> g = f - Poly<C>::constant(f.space(), c0);
  if (!in_truncation_ideal(g)) throw not_invertible("non-constant part of the series is not nilpotent");
  C inv = inverse(c0);
  Poly<C> h = g * (-inv);
  Poly<C> r = Poly<C>::constant(f.space(), one_like(c0)), term = r;
  for (;;) {
    term = term * h;
    if (term.is_zero()) break;
    r += term;
  }
  return r * inv;
}

template <class C>
bool is_unit(const Poly<C>& f) {
  C c0 = f.constant_term();
  if (!is_unit(c0)) return false;
  return in_truncation_ideal(f - Poly<C>::constant(f.space(), c0));
}
template <class C>
Poly<C> inverse(const Poly<C>& f) {
  return series_recip(f);
}

// exp of a nilpotent series; in characteristic p only when f^p vanishes.
template <class C>
Poly<C> series_exp(const Poly<C>& f) {
  if (!is_zero(f.constant_term()) || !in_truncation_ideal(f))
    throw not_invertible("exp of a series with non-nilpotent part");
  const auto p = characteristic(f.zero_coeff());
  Poly<C> r = one_like(f), term = r;
  for (long k = 1;; ++k) {
    term = term * f;
    if (term.is_zero()) break;
    if (p && k % p == 0) throw math_error("exp", "exp needs division by " + std::to_string(k) + " in characteristic " + std::to_string(p));
    term = term * from_scalar(f.zero_coeff(), Scalar(k, p).inverse());
    r += term;
  }
  return r;
}

// f(phi): `subs[v]` replaces variable v of f's space (same target space).
template <class C>
Poly<C> series_compose(const Poly<C>& f, const std::map<int, Poly<C>>& subs, const SpacePtr& target) {
  std::vector<const Poly<C>*> images(f.space()->size(), nullptr);
  for (const auto& [v, g] : subs) {
    if (f.space()->truncated(v) && !in_truncation_ideal(g))
      throw not_invertible("composition with a non-nilpotent constant term");
    images[v] = &g;
  }
  return substitute(f, target, images);
}

// Compositional inverse of a tuple phi (phi(0) = 0, invertible linear part)
// in the variables `vars` of the common space.
template <class C>
std::vector<Poly<C>> formal_inverse(const std::vector<Poly<C>>& phi, const std::vector<int>& vars) {
  const std::size_t n = vars.size();
  if (phi.size() != n) throw context_mismatch("formal_inverse needs as many series as variables");
  const SpacePtr sp = phi[0].space();
  const C zero = phi[0].zero_coeff();
  Matrix<C> jac(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    if (!is_zero(phi[i].constant_term())) throw not_invertible("formal_inverse needs zero constant terms");
    for (std::size_t j = 0; j < n; ++j) {
      Exp e(sp->size(), 0);
      e[vars[j]] = 1;
      jac(i, j) = phi[i].coeff(e);
    }
  }
  Matrix<C> jinv(0, 0, zero);
  try {
    jinv = inverse(jac);
  } catch (const not_invertible&) {
    throw not_invertible("formal_inverse: singular Jacobian");
  }
  std::vector<Poly<C>> high, w;
  for (std::size_t i = 0; i < n; ++i) {
    Poly<C> lin(sp, zero);
    for (std::size_t j = 0; j < n; ++j) {
      Exp e(sp->size(), 0);
      e[vars[j]] = 1;
      lin.add_term(e, jac(i, j));
    }
    high.push_back(phi[i] - lin);
    w.push_back(Poly<C>::variable(sp, vars[i], one_like(zero)));
  }
  auto apply_jinv = [&](const std::vector<Poly<C>>& v) {
    std::vector<Poly<C>> out;
    for (std::size_t i = 0; i < n; ++i) {
      Poly<C> s(sp, zero);
      for (std::size_t j = 0; j < n; ++j) s += v[j] * jinv(i, j);
      out.push_back(std::move(s));
    }
    return out;
  };
  std::vector<Poly<C>> g = apply_jinv(w);
  for (int iter = 0; iter < 1000; ++iter) {
    std::map<int, Poly<C>> subs;
    for (std::size_t j = 0; j < n; ++j) subs.emplace(vars[j], g[j]);
    std::vector<Poly<C>> rhs;
    for (std::size_t i = 0; i < n; ++i) rhs.push_back(w[i] - series_compose(high[i], subs, sp));
    auto next = apply_jinv(rhs);
    if (next == g) return g;
    g = std::move(next);
  }
  throw horizon_error("formal_inverse did not converge");
}

}  // namespace modalg
