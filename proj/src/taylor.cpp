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

#include "modalg/taylor.hpp"

#include <set>

#include "modalg/matrix.hpp"

namespace modalg {

HomElement taylor_expand(const RatFunc& a, const HomCtxPtr& ctx) {
  const ActionSpec& act = *ctx->action;
  std::vector<Poly<RatFunc>> vals;
  vals.reserve(ctx->keys.size());
  for (const auto& k : ctx->keys) vals.push_back(act.theta_series(act.apply_word(k, a), ctx->sp));
  return HomElement(ctx, std::move(vals));
}

HomElement rho0(const RatFunc& a, const HomCtxPtr& ctx) { return HomElement::constant(ctx, a); }

HomElement TaylorMap::expand(const RatFunc& a) const {
  const std::string key = a.to_string();
  {
    std::lock_guard<std::mutex> lock(m_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  HomElement r = taylor_expand(a, ctx_);
  std::lock_guard<std::mutex> lock(m_);
  return cache_.emplace(key, std::move(r)).first->second;
}

std::size_t TaylorMap::cache_size() const {
  std::lock_guard<std::mutex> lock(m_);
  return cache_.size();
}

HomElement theta_apply(const ActionSpec& th, const Exp& k, const HomElement& f) {
  std::vector<Poly<RatFunc>> vals;
  for (const auto& v : f.values()) vals.push_back(v.map_coeffs([&](const RatFunc& c) { return th.apply(DElem{k, {}}, c); }));
  return HomElement(f.ctx(), std::move(vals));
}

namespace {

RatFunc map_ratfunc(const RatFunc& c, const std::vector<RatFunc>& lambda) {
  std::vector<const RatFunc*> ptrs;
  for (const auto& x : lambda) ptrs.push_back(&x);
  const SpacePtr& target = lambda.at(0).space();
  return eval_mpoly(c.num(), ptrs, target) / eval_mpoly(c.den(), ptrs, target);
}

}  // namespace

HomElement hom_map(const HomElement& f, const std::vector<RatFunc>& lambda) {
  std::vector<Poly<RatFunc>> vals;
  for (const auto& v : f.values()) vals.push_back(v.map_coeffs([&](const RatFunc& c) { return map_ratfunc(c, lambda); }));
  return HomElement(f.ctx(), std::move(vals));
}

HomElement lambda_apply(const std::vector<HomElement>& lambda_gens, const RatFunc& a) {
  const HomCtxPtr& ctx = lambda_gens.at(0).ctx();
  std::vector<Poly<RatFunc>> vals;
  for (std::size_t i = 0; i < ctx->keys.size(); ++i) {
    std::vector<const Poly<RatFunc>*> ptrs;
    for (const auto& g : lambda_gens) ptrs.push_back(&g.values()[i]);
    const RatFunc bz = lambda_gens[0].values()[i].zero_coeff();
    auto cmap = [&](const Scalar& c) { return Poly<RatFunc>::constant(ctx->sp, RatFunc::constant(bz.space(), c)); };
    Poly<RatFunc> num = substitute(a.num(), ctx->sp, ptrs, bz, cmap);
    Poly<RatFunc> den = substitute(a.den(), ctx->sp, ptrs, bz, cmap);
    vals.push_back(num * series_recip(den));
  }
  return HomElement(ctx, std::move(vals));
}

UniversalReport check_rho_universal(const HomCtxPtr& ctx, const std::vector<HomElement>& lambda_gens,
                                    const std::vector<RatFunc>& samples) {
  UniversalReport rep;
  for (const auto& g : lambda_gens) rep.lambda.push_back(g.eval_one());
  for (const auto& a : samples) {
    ++rep.checked;
    HomElement lhs = lambda_apply(lambda_gens, a);
    HomElement rhs = hom_map(taylor_expand(a, ctx), rep.lambda);
    if (!(lhs == rhs)) {
      rep.pass = false;
      rep.witness = "a=" + a.to_string() + ": Lambda(a)=" + lhs.to_string() + ", Hom(D,lambda)(rho(a))=" + rhs.to_string();
      return rep;
    }
  }
  return rep;
}

HomElement mu_Au(const std::vector<TensorTerm>& x, const ActionSpec& theta_u, const HomCtxPtr& target) {
  const std::size_t nt = target->action->nt();
  std::vector<Poly<RatFunc>> out;
  for (std::size_t ki = 0; ki < target->keys.size(); ++ki) {
    const Key& key = target->keys[ki];
    Poly<RatFunc> acc(target->sp, x.at(0).a.zero_coeff());
    for (const auto& term : x) {
      if (!same_space(term.a.space(), target->sp)) throw context_mismatch("mu_Au: tensor factor outside the target space");
      const Poly<RatFunc>& fv = term.f.at(key);
      Poly<RatFunc> img(target->sp, acc.zero_coeff());
      for (const auto& [e, c] : fv.terms()) {
        Exp te(target->sp->size(), 0);
        for (std::size_t i = 0; i < nt; ++i) te[i] = e[i];
        for (std::size_t i = nt; i < e.size(); ++i)
          if (e[i]) throw context_mismatch("mu_Au: first factor must be a Hom(D, L) element");
        Poly<RatFunc> tc = theta_u.theta_series(c, target->sp);
        img += tc * Poly<RatFunc>::monomial(target->sp, te, one_like(c));
      }
      acc += img * term.a;
    }
    out.push_back(std::move(acc));
  }
  return HomElement(target, std::move(out));
}

std::vector<RatFunc> coordinates(const HomElement& f) {
  std::vector<RatFunc> out;
  const auto& ctx = *f.ctx();
  const std::size_t nt = ctx.action->nt();
  const int N = nt ? ctx.horizon : 0;
  std::vector<Exp> mons;
  std::function<void(Exp&, std::size_t, int)> rec = [&](Exp& e, std::size_t i, int left) {
    if (i == nt) {
      mons.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(e, i + 1, left - k);
    }
    e[i] = 0;
  };
  Exp e(ctx.sp->size(), 0);
  rec(e, 0, N);
  for (const auto& v : f.values())
    for (const auto& m : mons) out.push_back(v.coeff(m));
  return out;
}

std::size_t l_rank(const std::vector<HomElement>& xs) {
  if (xs.empty()) return 0;
  std::vector<std::set<Exp>> supp(xs[0].values().size());
  for (const auto& x : xs)
    for (std::size_t k = 0; k < x.values().size(); ++k)
      for (const auto& [e, c] : x.values()[k].terms()) supp[k].insert(e);
  std::size_t rows = 0;
  for (const auto& s : supp) rows += s.size();
  const RatFunc zero = zero_like(xs[0].values()[0].zero_coeff());
  Matrix<RatFunc> m(rows, xs.size(), zero);
  for (std::size_t j = 0; j < xs.size(); ++j) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < supp.size(); ++k)
      for (const auto& e : supp[k]) m(r++, j) = xs[j].values()[k].coeff(e);
  }
  return rank(m);
}

}  // namespace modalg
