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

#include "modalg/actions.hpp"

#include <mutex>
#include <numeric>
#include <set>

#include "modalg/parse.hpp"

namespace modalg {

FieldDesc FieldDesc::make(std::vector<std::string> base_names, std::vector<std::string> gen_names,
                          std::uint32_t p) {
  check_characteristic(p);
  FieldDesc f;
  f.p = p;
  std::vector<std::string> all = base_names;
  for (int i = 0; i < static_cast<int>(base_names.size()); ++i) f.base.push_back(i);
  all.insert(all.end(), gen_names.begin(), gen_names.end());
  f.vars = make_space(std::move(all));
  return f;
}

bool FieldDesc::is_base(int v) const { return std::find(base.begin(), base.end(), v) != base.end(); }

std::vector<int> FieldDesc::generators() const {
  std::vector<int> g;
  for (int i = 0; i < static_cast<int>(size()); ++i)
    if (!is_base(i)) g.push_back(i);
  return g;
}

RatFunc FieldDesc::parse(const std::string& s) const { return parse_ratfunc(s, vars, p); }

bool FieldDesc::in_base(const RatFunc& f) const {
  for (int v : generators())
    if (f.num().involves(v) || f.den().involves(v)) return false;
  return true;
}

std::string ActionSpec::kind_name() const {
  std::string d = der == DerKind::Der ? "Der" : der == DerKind::IterDer ? "IterDer(" + std::to_string(nt()) + ")" : "";
  std::string m = monoid == MonoidKind::End ? "End" : monoid == MonoidKind::Aut ? "Aut"
                : monoid == MonoidKind::Free ? "Monoid(" + std::to_string(gens.size()) + ")" : "";
  if (!d.empty() && !m.empty()) return "Smash(" + d + "," + m + ")";
  if (!d.empty()) return d;
  if (!m.empty()) return m;
  return "Trivial";
}

SpacePtr ActionSpec::t_space(int horizon, const std::vector<std::string>& extra,
                             const std::vector<Constraint>& extra_cons) const {
  std::vector<std::string> names = tnames;
  names.insert(names.end(), extra.begin(), extra.end());
  std::vector<Constraint> cons;
  if (nt()) {
    std::vector<int> tv(nt());
    std::iota(tv.begin(), tv.end(), 0);
    cons.push_back({tv, horizon});
    for (std::size_t i = 0; i < caps.size(); ++i)
      if (caps[i] > 0) cons.push_back({{static_cast<int>(i)}, caps[i] - 1});
  }
  for (auto c : extra_cons) {
    for (auto& v : c.vars) v += static_cast<int>(nt());
    cons.push_back(std::move(c));
  }
  return make_space(std::move(names), std::move(cons));
}

std::vector<Key> ActionSpec::keys(int h) const {
  std::vector<Key> out;
  switch (monoid) {
    case MonoidKind::None:
      out.push_back({});
      break;
    case MonoidKind::End:
      for (int k = 0; k < h; ++k) out.push_back({k});
      break;
    case MonoidKind::Aut:
      for (int k = -(h - 1); k < h; ++k) out.push_back({k});
      break;
    case MonoidKind::Free: {
      std::vector<Key> layer{{}};
      out.push_back({});
      for (int len = 1; len < h; ++len) {
        std::vector<Key> next;
        for (const auto& w : layer)
          for (int g = 0; g < static_cast<int>(gens.size()); ++g) {
            Key x = w;
            x.push_back(g);
            next.push_back(x);
          }
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
      }
      break;
    }
  }
  return out;
}

Key ActionSpec::key_mul(const Key& a, const Key& b) const {
  switch (monoid) {
    case MonoidKind::None:
      return {};
    case MonoidKind::End:
    case MonoidKind::Aut:
      return {a[0] + b[0]};
    case MonoidKind::Free: {
      Key r = a;
      r.insert(r.end(), b.begin(), b.end());
      return r;
    }
  }
  return {};
}

int ActionSpec::key_len(const Key& k) const {
  if (monoid == MonoidKind::End || monoid == MonoidKind::Aut) return std::abs(k[0]);
  return static_cast<int>(k.size());
}

RatFunc ActionSpec::apply_gen(int g, const RatFunc& a, bool inv) const {
  const auto& ims = inv ? gens.at(g).inverse : gens.at(g).images;
  if (inv && ims.empty()) throw math_error("automorphism", "inverse of '" + gens.at(g).name + "' not available");
  std::vector<const RatFunc*> ptrs(field.size(), nullptr);
  for (std::size_t v = 0; v < ims.size(); ++v)
    if (ims[v]) ptrs[v] = &*ims[v];
  return substitute(a, ptrs);
}

RatFunc ActionSpec::apply_word(const Key& w, const RatFunc& a) const {
  switch (monoid) {
    case MonoidKind::None:
      return a;
    case MonoidKind::End:
    case MonoidKind::Aut: {
      RatFunc r = a;
      for (int i = 0; i < std::abs(w[0]); ++i) r = apply_gen(0, r, w[0] < 0);
      return r;
    }
    case MonoidKind::Free: {
      RatFunc r = a;
      for (auto it = w.rbegin(); it != w.rend(); ++it) r = apply_gen(*it, r);
      return r;
    }
  }
  return a;
}

namespace {

Exp unit_exp(std::size_t n, std::size_t i, int k = 1) {
  Exp e(n, 0);
  e[i] = k;
  return e;
}

}  // namespace

RatFunc ActionSpec::apply(const DElem& d, const RatFunc& a) const {
  if (custom) return custom(d, a);
  RatFunc b = apply_word(d.word, a);
  if (total_degree(d.k) == 0) return b;
  switch (der) {
    case DerKind::None:
      throw context_mismatch("no derivation part in " + kind_name());
    case DerKind::Der: {
      Scalar fact(1, p());
      for (int x : d.k) fact *= factorial(x, p());
      RatFunc c = theta_series(b, t_space(total_degree(d.k))).coeff(d.k);
      c *= fact;
      return c;
    }
    case DerKind::IterDer: {
      SpacePtr sp = t_space(total_degree(d.k));
      return theta_series(b, sp).coeff(d.k);
    }
  }
  return b;
}

Poly<RatFunc> ActionSpec::der_series(const RatFunc& a, const SpacePtr& sp) const {
  const RatFunc zero = field.zero();
  int N = sp->constraints().empty() ? 0 : sp->constraints()[0].bound;
  Poly<RatFunc> r(sp, zero);
  std::map<Exp, RatFunc> memo;
  for (const auto& k : multi_indices(nt(), N)) {
    RatFunc v = a;
    if (total_degree(k) > 0) {
      std::size_t i = 0;
      while (k[i] == 0) ++i;
      Exp prev = k;
      --prev[i];
      const RatFunc& b = memo.at(prev);
      v = field.zero();
      for (std::size_t x = 0; x < field.size(); ++x) {
        const auto& im = der_images.at(i).at(x);
        if (!im || im->is_zero()) continue;
        RatFunc dv = derivative(b, static_cast<int>(x));
        if (!dv.is_zero()) v += dv * *im;
      }
    }
    memo.emplace(k, v);
    Scalar fact(1, p());
    for (int x : k) fact *= factorial(x, p());
    if (fact.is_zero()) throw invalid_field("Taylor expansion needs k! invertible");
    Exp e(sp->size(), 0);
    std::copy(k.begin(), k.end(), e.begin());
    RatFunc c = v;
    c *= fact.inverse();
    r.add_term(e, c);
  }
  return r;
}

Poly<RatFunc> ActionSpec::theta_series(const RatFunc& a, const SpacePtr& sp) const {
  const RatFunc zero = field.zero();
  if (custom) {
    Poly<RatFunc> r(sp, zero);
    int N = sp->constraints().empty() ? 0 : sp->constraints()[0].bound;
    for (const auto& k : multi_indices(nt(), N)) {
      Exp e(sp->size(), 0);
      std::copy(k.begin(), k.end(), e.begin());
      r.add_term(e, custom(DElem{k, {}}, a));
    }
    return r;
  }
  if (der == DerKind::None) return Poly<RatFunc>::constant(sp, a);
  if (der == DerKind::Der) {
    // exp(t D) is a ring map, so expand the variables and substitute.
    std::vector<Poly<RatFunc>> vims;
    for (std::size_t v = 0; v < field.size(); ++v) vims.push_back(der_series(field.var(static_cast<int>(v)), sp));
    std::vector<const Poly<RatFunc>*> ps;
    for (const auto& x : vims) ps.push_back(&x);
    return expand_ratfunc(a, ps, sp);
  }
  std::vector<Poly<RatFunc>> ims;
  ims.reserve(field.size());
  for (std::size_t v = 0; v < field.size(); ++v) {
    if (v < iter_images.size() && iter_images[v])
      ims.push_back((*iter_images[v])(sp));
    else
      ims.push_back(Poly<RatFunc>::constant(sp, field.var(static_cast<int>(v))));
  }
  std::vector<const Poly<RatFunc>*> ptrs;
  for (const auto& x : ims) ptrs.push_back(&x);
  return expand_ratfunc(a, ptrs, sp);
}

Poly<RatFunc> expand_ratfunc(const RatFunc& a, const std::vector<const Poly<RatFunc>*>& images, const SpacePtr& sp) {
  const RatFunc zero(a.space(), a.characteristic());
  std::vector<Poly<RatFunc>> fixed;
  fixed.reserve(a.space()->size());
  std::vector<const Poly<RatFunc>*> ptrs(a.space()->size());
  for (std::size_t v = 0; v < ptrs.size(); ++v) {
    if (v < images.size() && images[v]) {
      ptrs[v] = images[v];
    } else {
      fixed.push_back(Poly<RatFunc>::constant(sp, RatFunc::variable(a.space(), static_cast<int>(v), a.characteristic())));
    }
  }
  for (std::size_t v = 0, j = 0; v < ptrs.size(); ++v)
    if (!ptrs[v]) ptrs[v] = &fixed[j++];
  auto cmap = [&](const Scalar& c) { return Poly<RatFunc>::constant(sp, RatFunc::constant(a.space(), c)); };
  Poly<RatFunc> num = substitute(a.num(), sp, ptrs, zero, cmap);
  if (a.den().is_constant()) return num * RatFunc::constant(a.space(), a.den().constant_term().inverse());
  Poly<RatFunc> den = substitute(a.den(), sp, ptrs, zero, cmap);
  return num * series_recip(den);
}

std::vector<std::pair<Exp, Scalar>> ActionSpec::word_rule(const Key& w, const Exp& l) const {
  std::vector<std::pair<Exp, Scalar>> cur{{l, Scalar(1, p())}};
  if (rule.empty() || monoid == MonoidKind::None) return cur;
  std::vector<int> seq;
  if (monoid == MonoidKind::Free) {
    seq = w;
  } else {
    if (w[0] < 0) throw math_error("commutation", "commutation rules for inverse automorphisms are not supported");
    seq.assign(w[0], 0);
  }
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) {
    std::map<Exp, Scalar> next;
    for (const auto& [j, c] : cur) {
      auto r = rule.find({*it, j});
      if (r == rule.end()) {
        auto [pos, fresh] = next.try_emplace(j, c);
        if (!fresh) pos->second += c;
      } else {
        for (const auto& [i, ci] : r->second) {
          auto [pos, fresh] = next.try_emplace(i, c * ci);
          if (!fresh) pos->second += c * ci;
        }
      }
    }
    cur.clear();
    for (auto& [j, c] : next)
      if (!c.is_zero()) cur.emplace_back(j, c);
  }
  return cur;
}

std::vector<std::tuple<Scalar, DElem, DElem>> ActionSpec::coproduct(const DElem& d) const {
  std::vector<std::tuple<Scalar, DElem, DElem>> out;
  Exp i(d.k.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == d.k.size()) {
      Exp j(d.k.size());
      for (std::size_t q = 0; q < j.size(); ++q) j[q] = d.k[q] - i[q];
      Scalar c = der == DerKind::Der ? binom(d.k, i, p()) : Scalar(1, p());
      out.emplace_back(c, DElem{i, d.word}, DElem{j, d.word});
      return;
    }
    for (int x = 0; x <= d.k[pos]; ++x) {
      i[pos] = x;
      rec(pos + 1);
    }
    i[pos] = 0;
  };
  rec(0);
  return out;
}

Scalar ActionSpec::counit(const DElem& d) const { return Scalar(total_degree(d.k) == 0 ? 1 : 0, p()); }

std::vector<DElem> ActionSpec::basis(int tdeg, int h) const {
  std::vector<DElem> out;
  auto ks = der == DerKind::None ? std::vector<Exp>{Exp{}} : multi_indices(nt(), tdeg);
  for (const auto& w : keys(h))
    for (const auto& k : ks) out.push_back(DElem{k, w});
  return out;
}

std::string ActionSpec::key_string(const Key& k) const {
  switch (monoid) {
    case MonoidKind::None:
      return "1";
    case MonoidKind::End:
    case MonoidKind::Aut:
      if (k[0] == 0) return "1";
      return gens.at(0).name + (k[0] == 1 ? "" : "^" + std::to_string(k[0]));
    case MonoidKind::Free: {
      if (k.empty()) return "1";
      std::string s;
      for (int g : k) s += (s.empty() ? "" : "*") + gens.at(g).name;
      return s;
    }
  }
  return "";
}

std::string ActionSpec::delem_string(const DElem& d) const {
  std::string s;
  if (total_degree(d.k) > 0 || monoid == MonoidKind::None) {
    std::string idx;
    for (std::size_t i = 0; i < d.k.size(); ++i) idx += (i ? "," : "") + std::to_string(d.k[i]);
    s = der == DerKind::Der ? "d^(" + idx + ")" : "theta^(" + idx + ")";
    if (d.k.empty()) s = "1";
  }
  std::string w = key_string(d.word);
  if (w == "1") return s.empty() ? "1" : s;
  return s.empty() ? w : s + "*" + w;
}

ActionPtr trivial_action(const FieldDesc& f) {
  auto a = std::make_shared<ActionSpec>();
  a->field = f;
  return a;
}

SeriesImage series_image(const std::string& expr, const FieldDesc& f) {
  struct Cache {
    std::mutex m;
    std::map<std::string, Poly<RatFunc>> by_space;
  };
  auto cache = std::make_shared<Cache>();
  return [expr, f, cache](const SpacePtr& sp) {
    std::string key;
    for (const auto& n : sp->names()) key += n + ",";
    for (const auto& c : sp->constraints()) {
      key += "|" + std::to_string(c.bound) + ":";
      for (int v : c.vars) key += std::to_string(v) + ",";
    }
    {
      std::lock_guard<std::mutex> lock(cache->m);
      auto it = cache->by_space.find(key);
      if (it != cache->by_space.end()) return it->second.rehome(sp);
    }
    Poly<RatFunc> r = parse_series(expr, sp, f.vars, f.p);
    std::lock_guard<std::mutex> lock(cache->m);
    cache->by_space.emplace(key, r);
    return r;
  };
}

ActionPtr iterative_action(const FieldDesc& f, std::vector<std::string> tnames,
                           const std::map<std::string, std::string>& images, int horizon) {
  auto a = std::make_shared<ActionSpec>();
  a->field = f;
  a->der = DerKind::IterDer;
  a->tnames = std::move(tnames);
  a->t_horizon = horizon;
  a->iter_images.resize(f.size());
  for (const auto& [name, expr] : images) a->iter_images[f.vars->require(name)] = series_image(expr, f);
  return a;
}

ActionPtr derivation_action(const FieldDesc& f, const std::map<std::string, std::string>& images,
                            std::string tname, int horizon) {
  if (f.p != 0) throw invalid_field("Der actions need characteristic 0");
  auto a = std::make_shared<ActionSpec>();
  a->field = f;
  a->der = DerKind::Der;
  a->tnames = {std::move(tname)};
  a->t_horizon = horizon;
  a->der_images.assign(1, std::vector<std::optional<RatFunc>>(f.size()));
  for (const auto& [name, expr] : images) a->der_images[0][f.vars->require(name)] = f.parse(expr);
  return a;
}

MonoidGen make_gen(const FieldDesc& f, std::string name, const std::map<std::string, std::string>& images,
                   MonoidKind kind, const std::map<std::string, std::string>& inverse) {
  MonoidGen g;
  g.name = std::move(name);
  g.images.resize(f.size());
  for (const auto& [v, e] : images) g.images[f.vars->require(v)] = f.parse(e);
  if (kind != MonoidKind::Aut) return g;
  g.inverse.resize(f.size());
  if (!inverse.empty()) {
    for (const auto& [v, e] : inverse) g.inverse[f.vars->require(v)] = f.parse(e);
    return g;
  }
  for (std::size_t v = 0; v < f.size(); ++v) {
    if (!g.images[v]) continue;
    const RatFunc& im = *g.images[v];
    RatFunc a = derivative(im, static_cast<int>(v));
    RatFunc b = im - a * f.var(static_cast<int>(v));
    if (!im.is_polynomial() || a.is_zero() || !derivative(a, static_cast<int>(v)).is_zero() ||
        !derivative(b, static_cast<int>(v)).is_zero())
      throw schema_error("inverse of automorphism '" + g.name + "' must be given for variable " + f.vars->name(v));
    for (std::size_t u = 0; u < f.size(); ++u)
      if (u != v && g.images[u] && (a.num().involves(static_cast<int>(u)) || b.num().involves(static_cast<int>(u))))
        throw schema_error("inverse of automorphism '" + g.name + "' must be given explicitly");
    g.inverse[v] = (f.var(static_cast<int>(v)) - b) / a;
  }
  return g;
}

ActionPtr monoid_action(const FieldDesc& f, MonoidKind kind, std::vector<MonoidGen> gens, int h) {
  if ((kind == MonoidKind::End || kind == MonoidKind::Aut) && gens.size() != 1)
    throw schema_error("End/Aut actions take exactly one generator");
  auto a = std::make_shared<ActionSpec>();
  a->field = f;
  a->monoid = kind;
  a->gens = std::move(gens);
  a->monoid_horizon = h;
  return a;
}

HomContext::HomContext(ActionPtr a, SpacePtr s, int hz, int hh)
    : action(std::move(a)), sp(std::move(s)), horizon(hz), h(hh) {
  keys = action->keys(h);
  for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], static_cast<int>(i));
}

HomCtxPtr make_hom_context(const ActionPtr& a, int horizon, int h, const std::vector<std::string>& extra,
                           const std::vector<Constraint>& extra_cons) {
  return std::make_shared<const HomContext>(a, a->t_space(horizon, extra, extra_cons), horizon, h);
}

HomElement HomElement::constant(const HomCtxPtr& ctx, const Poly<RatFunc>& c) {
  std::vector<Poly<RatFunc>> v(ctx->keys.size(), c.rehome(ctx->sp));
  return HomElement(ctx, std::move(v));
}

HomElement HomElement::constant(const HomCtxPtr& ctx, const RatFunc& c) {
  return constant(ctx, Poly<RatFunc>::constant(ctx->sp, c));
}

RatFunc HomElement::eval_one() const {
  Key one = ctx_->action->monoid == MonoidKind::End || ctx_->action->monoid == MonoidKind::Aut ? Key{0} : Key{};
  return at(one).constant_term();
}

bool HomElement::is_zero() const {
  for (const auto& v : vals_)
    if (!v.is_zero()) return false;
  return true;
}

HomElement& HomElement::operator+=(const HomElement& o) {
  for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] += o.vals_.at(i);
  return *this;
}

HomElement& HomElement::operator-=(const HomElement& o) {
  for (std::size_t i = 0; i < vals_.size(); ++i) vals_[i] -= o.vals_.at(i);
  return *this;
}

HomElement operator*(const HomElement& a, const HomElement& b) {
  if (a.vals_.size() != b.vals_.size()) throw context_mismatch("Hom elements with different horizons");
  std::vector<Poly<RatFunc>> v;
  v.reserve(a.vals_.size());
  for (std::size_t i = 0; i < a.vals_.size(); ++i) v.push_back(a.vals_[i] * b.vals_[i]);
  return HomElement(a.ctx_, std::move(v));
}

HomElement operator*(HomElement a, const RatFunc& c) {
  for (auto& v : a.vals_) v *= c;
  return a;
}

HomElement HomElement::pow(int k) const {
  std::vector<Poly<RatFunc>> v;
  for (const auto& x : vals_) v.push_back(x.pow(k));
  return HomElement(ctx_, std::move(v));
}

HomElement HomElement::inverse() const {
  std::vector<Poly<RatFunc>> v;
  for (const auto& x : vals_) v.push_back(series_recip(x));
  return HomElement(ctx_, std::move(v));
}

HomElement HomElement::rehome(const HomCtxPtr& ctx) const {
  std::vector<Poly<RatFunc>> v;
  for (const auto& k : ctx->keys) v.push_back(at(k).rehome(ctx->sp));
  return HomElement(ctx, std::move(v));
}

std::string HomElement::to_string() const {
  const auto& a = *ctx_->action;
  if (a.monoid == MonoidKind::None) return modalg::to_string(vals_[0], true);
  std::string s;
  if (a.monoid == MonoidKind::End && a.der == DerKind::None) {
    s = "(";
    for (std::size_t i = 0; i < vals_.size(); ++i) s += (i ? ", " : "") + modalg::to_string(vals_[i], true);
    return s + ")";
  }
  s = "{";
  for (std::size_t i = 0; i < vals_.size(); ++i)
    s += (i ? ", " : "") + a.key_string(ctx_->keys[i]) + ": " + modalg::to_string(vals_[i], true);
  return s + "}";
}

HomElement convolution(const HomElement& f, const HomElement& g) { return f * g; }

HomElement unit_hom(const HomCtxPtr& ctx) {
  return HomElement::constant(ctx, ctx->action->field.one());
}

namespace {

// Hasse derivative in the t-variables: sum_m C(m, j) f_m t^(m-j).
Poly<RatFunc> hasse(const Poly<RatFunc>& f, const Exp& j, std::size_t nt, const SpacePtr& target) {
  Poly<RatFunc> r(target, f.zero_coeff());
  const auto p = f.zero_coeff().characteristic();
  for (const auto& [e, c] : f.terms()) {
    Exp m(e.begin(), e.begin() + nt);
    bool ok = true;
    for (std::size_t i = 0; i < nt; ++i)
      if (m[i] < j[i]) ok = false;
    if (!ok) continue;
    Scalar b = binom(m, j, p);
    if (b.is_zero()) continue;
    Exp x = e;
    for (std::size_t i = 0; i < nt; ++i) x[i] -= j[i];
    RatFunc cc = c;
    cc *= b;
    r.add_term(x, cc);
  }
  return r;
}

}  // namespace

HomElement psi_int(const DElem& d, const HomElement& f) {
  const auto& ctx = *f.ctx();
  const ActionSpec& a = *ctx.action;
  const int len = a.key_len(d.word);
  const int h2 = a.monoid == MonoidKind::None ? ctx.h : ctx.h - len;
  if (h2 <= 0) throw horizon_error("psi_int: monoid horizon exhausted");
  int shift = total_degree(d.k);
  std::vector<Key> new_keys = a.keys(h2);
  std::vector<std::vector<std::pair<Exp, Scalar>>> rules;
  for (const auto& u : new_keys) {
    rules.push_back(a.word_rule(u, d.k));
    for (const auto& [j, c] : rules.back()) shift = std::max(shift, total_degree(j));
  }
  const int N2 = ctx.horizon - shift;
  if (N2 < 0) throw horizon_error("psi_int: series horizon exhausted");
  std::vector<std::string> extra(ctx.sp->names().begin() + a.nt(), ctx.sp->names().end());
  std::vector<Constraint> cons;
  std::vector<int> tv(a.nt());
  std::iota(tv.begin(), tv.end(), 0);
  for (const auto& c : ctx.sp->constraints()) {
    bool is_t = true;
    for (int v : c.vars)
      if (v >= static_cast<int>(a.nt())) is_t = false;
    if (is_t) continue;
    Constraint cc = c;
    for (auto& v : cc.vars) v -= static_cast<int>(a.nt());
    cons.push_back(cc);
  }
  auto nctx = make_hom_context(ctx.action, N2, h2, extra, cons);
  std::vector<Poly<RatFunc>> vals;
  for (std::size_t i = 0; i < new_keys.size(); ++i) {
    const Poly<RatFunc>& F = f.at(a.key_mul(new_keys[i], d.word));
    Poly<RatFunc> g(nctx->sp, F.zero_coeff());
    for (const auto& [j, c] : rules[i]) {
      RatFunc cc = f.ctx()->action->field.one();
      cc *= c;
      g += hasse(F.rehome(ctx.sp), j, a.nt(), nctx->sp) * cc;
    }
    vals.push_back(std::move(g));
  }
  return HomElement(nctx, std::move(vals));
}

namespace {

std::vector<RatFunc> test_elements(const FieldDesc& f) {
  std::vector<RatFunc> t;
  for (std::size_t i = 0; i < f.size(); ++i) t.push_back(f.var(static_cast<int>(i)));
  for (std::size_t i = 0; i < f.size(); ++i) t.push_back(f.var(static_cast<int>(i)) + f.one());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i; j < f.size(); ++j) t.push_back(f.var(static_cast<int>(i)) * f.var(static_cast<int>(j)));
  return t;
}

int check_h(const ActionSpec& a, int depth) {
  return a.monoid == MonoidKind::None ? 1 : std::max(1, std::min(a.monoid_horizon, depth + 1));
}

}  // namespace

CheckReport check_measuring(const ActionSpec& a, int depth) {
  CheckReport rep;
  rep.law = "measuring";
  const auto T = test_elements(a.field);
  const auto B = a.basis(depth, check_h(a, depth));
  for (const auto& x : T)
    for (const auto& y : T)
      for (const auto& d : B) {
        RatFunc lhs = a.apply(d, x * y);
        RatFunc rhs = a.field.zero();
        for (const auto& [c, d1, d2] : a.coproduct(d)) {
          RatFunc t = a.apply(d1, x) * a.apply(d2, y);
          t *= c;
          rhs += t;
        }
        ++rep.checked;
        if (!(lhs == rhs)) {
          rep.pass = false;
          rep.witness = "d=" + a.delem_string(d) + ", a=" + x.to_string() + ", b=" + y.to_string();
          return rep;
        }
      }
  for (const auto& d : B) {
    RatFunc u = a.apply(d, a.field.one());
    ++rep.checked;
    if (!(u == a.field.constant(a.counit(d)))) {
      rep.pass = false;
      rep.witness = "d=" + a.delem_string(d) + ", d(1)=" + u.to_string();
      return rep;
    }
  }
  return rep;
}

CheckReport check_module_algebra(const ActionSpec& a, int depth) {
  CheckReport rep;
  rep.law = "module-algebra";
  const auto T = test_elements(a.field);
  const int h = check_h(a, depth);
  const std::size_t nt = a.der == DerKind::None ? 0 : a.nt();
  const Exp zero_k(nt, 0);
  const Key one = a.keys(1)[0];
  auto fail = [&](const std::string& law, const std::string& w) {
    rep.pass = false;
    rep.law = law;
    rep.witness = w;
    return rep;
  };
  for (const auto& x : T) {
    ++rep.checked;
    if (!(a.apply(DElem{zero_k, one}, x) == x)) return fail("unit", "x=" + x.to_string());
  }
  if (a.der == DerKind::IterDer) {
    auto idx = multi_indices(nt, depth);
    for (const auto& i : idx)
      for (const auto& j : idx) {
        if (total_degree(i) == 0 || total_degree(j) == 0 || total_degree(i) + total_degree(j) > depth) continue;
        Exp ij(nt);
        for (std::size_t q = 0; q < nt; ++q) ij[q] = i[q] + j[q];
        Scalar b = binom(ij, i, a.p());
        for (const auto& x : T) {
          RatFunc lhs = a.apply(DElem{i, one}, a.apply(DElem{j, one}, x));
          RatFunc rhs = a.apply(DElem{ij, one}, x);
          rhs *= b;
          ++rep.checked;
          if (!(lhs == rhs)) {
            std::string si, sj;
            for (std::size_t q = 0; q < nt; ++q) {
              si += (q ? "," : "") + std::to_string(i[q]);
              sj += (q ? "," : "") + std::to_string(j[q]);
            }
            return fail("iterativity", "(i,j)=((" + si + "),(" + sj + ")), x=" + x.to_string());
          }
        }
      }
  }
  if (a.der == DerKind::Der) {
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < nt; ++j)
        for (const auto& x : T) {
          Exp ei = unit_exp(nt, i), ej = unit_exp(nt, j), eij = ei;
          eij[j] += 1;
          RatFunc lhs = a.apply(DElem{ei, one}, a.apply(DElem{ej, one}, x));
          ++rep.checked;
          if (!(lhs == a.apply(DElem{eij, one}, x)))
            return fail("derivation composition", "(i,j)=(" + std::to_string(i) + "," + std::to_string(j) + "), x=" + x.to_string());
        }
  }
  if (a.monoid != MonoidKind::None) {
    auto ws = a.keys(h);
    for (const auto& u : ws)
      for (const auto& v : ws) {
        Key uv = a.key_mul(u, v);
        if (a.key_len(uv) >= h) continue;
        for (const auto& x : T) {
          ++rep.checked;
          RatFunc lhs = a.apply(DElem{zero_k, u}, a.apply(DElem{zero_k, v}, x));
          if (!(lhs == a.apply(DElem{zero_k, uv}, x)))
            return fail("word composition", "(" + a.key_string(u) + "," + a.key_string(v) + "), x=" + x.to_string());
        }
      }
    if (a.monoid == MonoidKind::Aut)
      for (const auto& x : T) {
        ++rep.checked;
        if (!(a.apply_gen(0, a.apply_gen(0, x, true)) == x) || !(a.apply_gen(0, a.apply_gen(0, x), true) == x))
          return fail("automorphism inverse", "x=" + x.to_string());
      }
  }
  if (a.der != DerKind::None && a.monoid != MonoidKind::None) {
    std::vector<Key> singles;
    if (a.monoid == MonoidKind::Free)
      for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) singles.push_back({g});
    else
      singles.push_back({1});
    for (const auto& g : singles)
      for (const auto& l : multi_indices(nt, depth)) {
        if (total_degree(l) == 0) continue;
        for (const auto& x : T) {
          RatFunc lhs = a.apply(DElem{zero_k, g}, a.apply(DElem{l, one}, x));
          RatFunc rhs = a.field.zero();
          for (const auto& [j, c] : a.word_rule(g, l)) {
            RatFunc t = a.apply(DElem{j, one}, a.apply(DElem{zero_k, g}, x));
            t *= c;
            rhs += t;
          }
          ++rep.checked;
          if (!(lhs == rhs)) return fail("commutation rule", "g=" + a.key_string(g) + ", x=" + x.to_string());
        }
      }
  }
  return rep;
}

std::vector<Exp> ring_monomials(const FieldDesc& f, int degree, const std::vector<int>& vars) {
  std::vector<Exp> out;
  const std::size_t n = f.size();
  std::vector<bool> laur(n, false), use(n, false);
  for (int v : f.laurent) laur[v] = true;
  for (int v : vars) use[v] = true;
  for (int tot = 0; tot <= degree; ++tot) {
    Exp e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i == n) {
        if (left == 0) out.push_back(e);
        return;
      }
      if (!use[i]) {
        e[i] = 0;
        rec(i + 1, left);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
        if (laur[i] && k > 0) {
          e[i] = -k;
          rec(i + 1, left - k);
        }
      }
      e[i] = 0;
    };
    rec(0, tot);
  }
  return out;
}

RatFunc monomial_value(const FieldDesc& f, const Exp& e) {
  Exp pos(e.size(), 0), neg(e.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) (e[i] >= 0 ? pos[i] : neg[i]) = std::abs(e[i]);
  Scalar one(1, f.p);
  return RatFunc(MPoly::monomial(f.vars, pos, one), MPoly::monomial(f.vars, neg, one));
}

std::vector<DElem> constant_tests(const ActionSpec& a, int horizon) {
  std::vector<DElem> out;
  const std::size_t nt = a.der == DerKind::None ? 0 : a.nt();
  const Key one = a.keys(1)[0];
  for (std::size_t i = 0; i < nt; ++i) {
    int cap = i < a.caps.size() && a.caps[i] > 0 ? a.caps[i] - 1 : horizon;
    if (a.p() == 0 || a.der == DerKind::Der) {
      out.push_back(DElem{unit_exp(nt, i), one});
    } else {
      for (long q = 1; q <= std::min(horizon, cap); q *= a.p()) out.push_back(DElem{unit_exp(nt, i, static_cast<int>(q)), one});
    }
  }
  if (a.monoid == MonoidKind::Free)
    for (int g = 0; g < static_cast<int>(a.gens.size()); ++g) out.push_back(DElem{Exp(nt, 0), {g}});
  else if (a.monoid != MonoidKind::None)
    out.push_back(DElem{Exp(nt, 0), {1}});
  return out;
}

namespace {

MPoly lcm(const MPoly& a, const MPoly& b) { return exact_div(a * b, gcd(a, b)); }

// Appends coefficient rows of sum_m x_m vals[m] = 0 (vals share one field).
void add_rows(std::vector<std::vector<Scalar>>& rows, const std::vector<RatFunc>& vals, std::size_t offset,
              std::size_t width, std::uint32_t p) {
  MPoly den = MPoly::constant(vals[0].space(), Scalar(1, p));
  for (const auto& v : vals)
    if (!v.is_zero() && !v.den().is_constant()) den = lcm(den, v.den());
  std::map<Exp, std::vector<Scalar>, GrLex> by;
  for (std::size_t m = 0; m < vals.size(); ++m) {
    if (vals[m].is_zero()) continue;
    MPoly n = vals[m].num() * exact_div(den, vals[m].den());
    for (const auto& [e, c] : n.terms()) {
      auto it = by.try_emplace(e, width, Scalar(0, p)).first;
      it->second[offset + m] += c;
    }
  }
  for (auto& [e, r] : by) rows.push_back(std::move(r));
}

std::vector<std::vector<Scalar>> kernel_rref(const std::vector<std::vector<Scalar>>& rows, std::size_t width,
                                             std::uint32_t p) {
  Matrix<Scalar> m(rows.size(), width, Scalar(0, p));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  auto ker = kernel(m, Scalar(0, p));
  if (ker.empty()) return {};
  Matrix<Scalar> k(ker.size(), width, Scalar(0, p));
  for (std::size_t i = 0; i < ker.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) k(i, j) = ker[i][j];
  auto piv = rref(k);
  std::vector<std::vector<Scalar>> out;
  for (std::size_t i = 0; i < piv.size(); ++i) {
    std::vector<Scalar> r(width, Scalar(0, p));
    for (std::size_t j = 0; j < width; ++j) r[j] = k(i, j);
    out.push_back(std::move(r));
  }
  return out;
}

constexpr std::size_t kMonomialBudget = 4000;

}  // namespace

std::vector<std::vector<Scalar>> linear_relations(const std::vector<RatFunc>& vals, std::uint32_t p) {
  if (vals.empty()) return {};
  std::vector<std::vector<Scalar>> rows;
  add_rows(rows, vals, 0, vals.size(), p);
  return kernel_rref(rows, vals.size(), p);
}

std::vector<std::vector<Scalar>> coefficient_rows(const std::vector<RatFunc>& vals, std::uint32_t p) {
  std::vector<std::vector<Scalar>> rows;
  if (!vals.empty()) add_rows(rows, vals, 0, vals.size(), p);
  return rows;
}

std::vector<RatFunc> constants(const ActionSpec& a, int degree) {
  std::vector<int> all(a.field.size());
  std::iota(all.begin(), all.end(), 0);
  auto mons = ring_monomials(a.field, degree, all);
  if (mons.size() > kMonomialBudget) throw budget_exceeded("constants: degree bound exceeds presentation capability");
  std::vector<RatFunc> mv;
  for (const auto& e : mons) mv.push_back(monomial_value(a.field, e));
  std::vector<std::vector<Scalar>> rows;
  for (const auto& d : constant_tests(a, std::max(a.t_horizon, degree))) {
    std::vector<RatFunc> vals;
    Scalar eps = a.counit(d);
    for (const auto& m : mv) {
      RatFunc v = a.apply(d, m);
      RatFunc em = m;
      em *= eps;
      vals.push_back(v - em);
    }
    add_rows(rows, vals, 0, mv.size(), a.p());
  }
  std::vector<RatFunc> out;
  for (const auto& r : kernel_rref(rows, mv.size(), a.p())) {
    RatFunc s = a.field.zero();
    for (std::size_t j = 0; j < mv.size(); ++j)
      if (!r[j].is_zero()) {
        RatFunc t = mv[j];
        t *= r[j];
        s += t;
      }
    out.push_back(s);
  }
  return out;
}

SimplicityReport check_product_simplicity(const ProductRing& P) {
  SimplicityReport rep;
  const int r = P.count;
  std::vector<int> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& g : P.gens) {
    std::set<int> hit(g.source.begin(), g.source.end());
    if (static_cast<int>(hit.size()) != r) rep.injective = false;
    for (int j = 0; j < r; ++j) parent[find(j)] = find(g.source.at(j));
  }
  std::map<int, std::vector<int>> orb;
  for (int j = 0; j < r; ++j) orb[find(j)].push_back(j + 1);
  for (auto& [root, v] : orb) rep.orbits.push_back(v);
  std::sort(rep.orbits.begin(), rep.orbits.end());
  rep.simple = rep.injective && rep.orbits.size() == 1;
  return rep;
}

std::vector<std::vector<RatFunc>> product_constants(const ProductRing& P, int degree) {
  const FieldDesc& F = P.factor;
  std::vector<int> all(F.size());
  std::iota(all.begin(), all.end(), 0);
  auto mons = ring_monomials(F, degree, all);
  const std::size_t nm = mons.size(), width = nm * P.count;
  if (width > kMonomialBudget) throw budget_exceeded("product constants: degree bound exceeds presentation capability");
  std::vector<RatFunc> mv;
  for (const auto& e : mons) mv.push_back(monomial_value(F, e));
  std::vector<std::vector<Scalar>> rows;
  for (const auto& g : P.gens)
    for (int j = 0; j < P.count; ++j) {
      // tau_j(v_source) - v_j, unknowns laid out factor-major.
      std::vector<RatFunc> vals(width, F.zero());
      std::vector<const RatFunc*> ptrs(F.size(), nullptr);
      if (!g.embeddings.empty())
        for (std::size_t v = 0; v < F.size(); ++v)
          if (g.embeddings[j][v]) ptrs[v] = &*g.embeddings[j][v];
      for (std::size_t m = 0; m < nm; ++m) {
        vals[g.source[j] * nm + m] += g.embeddings.empty() ? mv[m] : substitute(mv[m], ptrs);
        vals[j * nm + m] -= mv[m];
      }
      add_rows(rows, vals, 0, width, F.p);
    }
  if (P.factor_action)
    for (const auto& d : constant_tests(*P.factor_action, std::max(P.factor_action->t_horizon, degree)))
      for (int i = 0; i < P.count; ++i) {
        std::vector<RatFunc> vals(width, F.zero());
        Scalar eps = P.factor_action->counit(d);
        for (std::size_t m = 0; m < nm; ++m) {
          RatFunc em = mv[m];
          em *= eps;
          vals[i * nm + m] = P.factor_action->apply(d, mv[m]) - em;
        }
        add_rows(rows, vals, 0, width, F.p);
      }
  std::vector<std::vector<RatFunc>> out;
  for (const auto& r : kernel_rref(rows, width, F.p)) {
    std::vector<RatFunc> tuple(P.count, F.zero());
    for (int i = 0; i < P.count; ++i)
      for (std::size_t m = 0; m < nm; ++m)
        if (!r[i * nm + m].is_zero()) {
          RatFunc t = mv[m];
          t *= r[i * nm + m];
          tuple[i] += t;
        }
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace modalg
