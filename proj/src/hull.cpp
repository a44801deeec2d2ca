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

#include "modalg/hull.hpp"

#include <gmpxx.h>

#include <mutex>
#include <numeric>
#include <set>

#include "modalg/matrix.hpp"

namespace modalg {

namespace {

// Multi-indices of n entries with |k| <= d, highest total degree first.
std::vector<Exp> indices_desc(std::size_t n, int d) {
  std::vector<Exp> out = multi_indices(n, d);
  std::stable_sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) { return total_degree(a) > total_degree(b); });
  return out;
}

// Exponents over `nvars` variables with total degree <= d, GrLex ascending.
std::vector<Exp> monomials_upto(std::size_t nvars, int d) {
  std::vector<Exp> out = indices_desc(nvars, d);
  std::sort(out.begin(), out.end(), GrLex());
  return out;
}

std::string index_string(const Exp& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s;
}

// Largest total w-degree admitted by every constraint that contains all w-variables.
int w_bound(const SpacePtr& sp, const std::vector<int>& wv) {
  int N = -1;
  for (const auto& c : sp->constraints()) {
    bool all = true;
    for (int v : wv)
      if (std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) all = false;
    if (all) N = N < 0 ? c.bound : std::min(N, c.bound);
  }
  if (N < 0) throw horizon_error("theta_u needs a truncated w-space");
  return N;
}

int t_coordinates(const ActionSpec& a, int N) {
  if (a.nt() == 0) return 1;
  SpacePtr sp = a.t_space(N);
  int count = 0;
  for (const auto& k : indices_desc(a.nt(), N)) {
    Exp e(sp->size(), 0);
    std::copy(k.begin(), k.end(), e.begin());
    if (sp->admits(e)) ++count;
  }
  return count;
}

constexpr std::size_t kRelationBudget = 400;

}  // namespace

std::vector<std::string> ExtensionDesc::wnames() const {
  if (n() == 1) return {"w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n(); ++i) out.push_back("w" + std::to_string(i + 1));
  return out;
}

ExtensionDesc make_extension(const ActionPtr& action, const std::vector<std::string>& u) {
  ExtensionDesc ext;
  ext.field = action->field;
  ext.action = action;
  for (const auto& s : u) ext.u.push_back(ext.field.parse(s));
  return ext;
}

ActionPtr make_theta_u(const ExtensionDesc& ext) {
  const FieldDesc f = ext.field;
  const std::vector<int> gens = f.generators();
  const std::size_t n = ext.n();
  if (n == 0 || n != gens.size())
    throw math_error("separability", "underdetermined: " + std::to_string(gens.size()) + " generators but " +
                                         std::to_string(n) + " basis elements");
  for (const auto& x : ext.u)
    if (!same_space(x.space(), f.vars)) throw context_mismatch("basis element outside the field");
  const std::vector<std::string> names = ext.wnames();
  struct State {
    std::mutex m;
    std::map<int, std::vector<Poly<RatFunc>>> by_bound;
  };
  auto st = std::make_shared<State>();
  const std::vector<RatFunc> u = ext.u;
  auto increments = [f, gens, u, names, st](int N) {
    {
      std::lock_guard<std::mutex> lock(st->m);
      auto it = st->by_bound.find(N);
      if (it != st->by_bound.end()) return it->second;
    }
    std::vector<int> wv(names.size());
    std::iota(wv.begin(), wv.end(), 0);
    SpacePtr W = make_space(names, {Constraint{wv, N}});
    std::vector<Poly<RatFunc>> shifted;
    for (std::size_t j = 0; j < gens.size(); ++j)
      shifted.push_back(Poly<RatFunc>::constant(W, f.var(gens[j])) + Poly<RatFunc>::variable(W, wv[j], f.one()));
    std::vector<const Poly<RatFunc>*> ptrs(f.size(), nullptr);
    for (std::size_t j = 0; j < gens.size(); ++j) ptrs[gens[j]] = &shifted[j];
    std::vector<Poly<RatFunc>> phi;
    for (const auto& ui : u) phi.push_back(expand_ratfunc(ui, ptrs, W) - Poly<RatFunc>::constant(W, ui));
    std::vector<Poly<RatFunc>> g;
    try {
      g = formal_inverse(phi, wv);
    } catch (const not_invertible&) {
      throw math_error("separability", "Jacobian of the basis is singular (inseparable or dependent basis)");
    }
    std::lock_guard<std::mutex> lock(st->m);
    return st->by_bound.emplace(N, std::move(g)).first->second;
  };
  increments(1);

  auto a = std::make_shared<ActionSpec>();
  a->field = f;
  a->der = DerKind::IterDer;
  a->tnames = names;
  a->t_horizon = ext.action ? ext.action->t_horizon : 6;
  a->iter_images.resize(f.size());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const RatFunc x = f.var(gens[j]);
    a->iter_images[gens[j]] = [increments, names, x, j](const SpacePtr& sp) {
      std::vector<int> wv;
      for (const auto& nm : names) wv.push_back(sp->require(nm));
      auto g = increments(std::max(1, w_bound(sp, wv)));
      return Poly<RatFunc>::constant(sp, x) + g[j].rehome(sp);
    };
  }
  return a;
}

std::map<Exp, HomElement> theta_closure(const ActionSpec& th, const HomElement& f, int order) {
  const auto& ctx = f.ctx();
  const std::size_t nt = th.nt();
  SpacePtr W = th.t_space(order);
  const RatFunc zero = th.field.zero();
  std::map<Exp, std::vector<Poly<RatFunc>>> vals;
  for (const auto& k : indices_desc(nt, order))
    vals.emplace(k, std::vector<Poly<RatFunc>>(f.values().size(), Poly<RatFunc>(ctx->sp, zero)));
  for (std::size_t i = 0; i < f.values().size(); ++i)
    for (const auto& [e, c] : f.values()[i].terms()) {
      Poly<RatFunc> s = th.theta_series(c, W);
      for (const auto& [ke, kc] : s.terms()) {
        Exp k(ke.begin(), ke.begin() + nt);
        vals.at(k)[i].add_term(e, kc);
      }
    }
  std::map<Exp, HomElement> out;
  for (auto& [k, v] : vals) out.emplace(k, HomElement(ctx, std::move(v)));
  return out;
}

bool in_l_span(const HomElement& x, const std::vector<HomElement>& gens, int degree) {
  std::vector<HomElement> mons{unit_hom(x.ctx())};
  std::vector<HomElement> layer = mons;
  for (int d = 1; d <= degree; ++d) {
    std::vector<HomElement> next;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (const auto& m : layer) next.push_back(m * gens[i]);
    mons.insert(mons.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  std::size_t r = l_rank(mons);
  mons.push_back(x);
  return l_rank(mons) == r;
}

HullPresentation hull_generators(const ExtensionDesc& ext, int horizon, int h) {
  HullPresentation H{ext, make_theta_u(ext), make_hom_context(ext.action, horizon, h), {}, {}, true, horizon};
  const FieldDesc& f = ext.field;
  const auto& names = f.vars->names();
  for (std::size_t v = 0; v < f.size(); ++v) {
    HullGen g{"rho0(" + names[v] + ")", rho0(f.var(static_cast<int>(v)), H.ctx)};
    H.kcal.push_back(g);
    H.lcal.push_back(g);
  }
  for (int s : f.base) {
    HomElement r = taylor_expand(f.var(s), H.ctx);
    if (!(r == rho0(f.var(s), H.ctx))) H.kcal.push_back({"rho(" + names[s] + ")", r});
  }
  std::vector<HullGen> closure;
  std::vector<HomElement> current;
  for (std::size_t v = 0; v < f.size(); ++v) {
    HomElement r = taylor_expand(f.var(static_cast<int>(v)), H.ctx);
    if (in_l_span(r, current, 2)) continue;
    closure.push_back({"rho(" + names[v] + ")", r});
    current.push_back(r);
  }
  std::vector<Exp> steps;
  const std::size_t n = ext.n();
  for (std::size_t i = 0; i < n; ++i) {
    if (f.p == 0) {
      Exp k(n, 0);
      k[i] = 1;
      steps.push_back(k);
    } else {
      for (long q = 1; q <= horizon; q *= f.p) {
        Exp k(n, 0);
        k[i] = static_cast<int>(q);
        steps.push_back(k);
      }
    }
  }
  const std::size_t limit = 4 * closure.size() + 8;
  for (std::size_t next = 0; next < closure.size(); ++next) {
    for (const auto& k : steps) {
      HomElement cand = theta_apply(*H.theta_u, k, closure[next].value);
      if (in_l_span(cand, current, 2)) continue;
      if (closure.size() >= limit) {
        H.stabilized = false;
        break;
      }
      closure.push_back({"theta^(" + index_string(k) + ")" + closure[next].name, cand});
      current.push_back(cand);
    }
    if (!H.stabilized) break;
  }
  H.lcal.insert(H.lcal.end(), closure.begin(), closure.end());
  return H;
}

std::vector<HomElement> symbol_values(const HullPresentation& hull, const RelationSet& rs, const HomCtxPtr& ctx) {
  const FieldDesc& f = hull.ext.field;
  std::map<int, std::map<Exp, HomElement>> cl;
  std::vector<HomElement> out;
  for (const auto& s : rs.symbols) {
    if (s.base) {
      out.push_back(taylor_expand(f.var(s.var), ctx));
      continue;
    }
    auto it = cl.find(s.var);
    if (it == cl.end())
      it = cl.emplace(s.var, theta_closure(*hull.theta_u, taylor_expand(f.var(s.var), ctx), rs.diff_order)).first;
    out.push_back(it->second.at(s.k));
  }
  return out;
}

HomElement eval_relation(const Poly<RatFunc>& rel, const std::vector<HomElement>& values) {
  const auto& ctx = values.at(0).ctx();
  HomElement acc = unit_hom(ctx) * rel.zero_coeff();
  for (const auto& [e, c] : rel.terms()) {
    HomElement t = unit_hom(ctx) * c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) t = t * values[i].pow(e[i]);
    acc += t;
  }
  return acc;
}

namespace {

// Coefficients cleared to coprime polynomials, then primitive with positive leading scalar.
Poly<RatFunc> normalize_relation(const Poly<RatFunc>& r, const FieldDesc& f) {
  MPoly den = MPoly::constant(f.vars, Scalar(1, f.p));
  for (const auto& [e, c] : r.terms()) den = exact_div(den * c.den(), gcd(den, c.den()));
  std::vector<std::pair<Exp, MPoly>> nums;
  MPoly g(f.vars, Scalar(0, f.p));
  for (const auto& [e, c] : r.terms()) {
    MPoly x = exact_div(c.num() * den, c.den());
    g = gcd(g, x);
    nums.emplace_back(e, std::move(x));
  }
  Scalar scale(1, f.p);
  if (f.p == 0) {
    mpz_class l = 1, h = 0;
    for (const auto& [e, x] : nums) {
      const MPoly q = exact_div(x, g);
      for (const auto& [m, s] : q.terms()) {
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), s.rational().get_den_mpz_t());
        mpz_gcd(h.get_mpz_t(), h.get_mpz_t(), s.rational().get_num_mpz_t());
      }
    }
    scale = Scalar(mpq_class(l, h), 0);
  }
  const Exp& lead = r.leading_exp();
  Poly<RatFunc> out(r.space(), r.zero_coeff());
  for (auto& [e, x] : nums) {
    MPoly y = exact_div(x, g) * scale;
    out.add_term(e, RatFunc(y));
  }
  const Scalar lc = out.coeff(lead).num().leading_coeff();
  if (f.p == 0) {
    if (lc.is_negative()) out = -out;
  } else {
    out *= RatFunc::constant(f.vars, lc.inverse());
  }
  return out;
}

std::vector<RatFunc> coefficient_vector(const Poly<RatFunc>& r, const std::vector<Exp>& mons, const RatFunc& zero) {
  std::vector<RatFunc> v(mons.size(), zero);
  for (std::size_t j = 0; j < mons.size(); ++j) v[j] = r.coeff(mons[j]);
  return v;
}

}  // namespace

RelationSet find_relations(const HullPresentation& hull, int diff_order, int degree) {
  if (diff_order < 0 || degree < 1) throw schema_error("relation bounds must be positive");
  const ExtensionDesc& ext = hull.ext;
  const FieldDesc& f = ext.field;
  const ActionSpec& A = *ext.action;
  const auto& names = f.vars->names();
  RelationSet rs;
  rs.diff_order = diff_order;
  rs.degree = degree;
  for (int a : f.generators())
    for (const auto& k : indices_desc(ext.n(), diff_order)) {
      std::string nm = "X_" + names[a];
      if (total_degree(k) > 0) nm += "[" + index_string(k) + "]";
      rs.symbols.push_back({nm, a, k, false});
    }
  for (int s : f.base)
    if (!(taylor_expand(f.var(s), hull.ctx) == rho0(f.var(s), hull.ctx)))
      rs.symbols.push_back({"rho(" + names[s] + ")", s, {}, true});
  std::vector<std::string> snames;
  for (const auto& s : rs.symbols) snames.push_back(s.name);
  rs.sp = make_space(snames);
  const std::vector<Exp> mons = monomials_upto(rs.symbols.size(), degree);
  rs.monomials = mons.size();
  if (mons.size() > kRelationBudget)
    throw budget_exceeded("relation search over " + std::to_string(mons.size()) + " monomials exceeds the budget of " +
                          std::to_string(kRelationBudget));

  // Sample at a horizon with enough coordinates to rule out truncation artifacts.
  int N = hull.horizon, h = hull.ctx->h;
  const bool truncated = A.nt() > 0 || A.monoid != MonoidKind::None;
  const std::size_t target = 2 * mons.size() + 8;
  if (truncated) {
    for (;;) {
      std::size_t coords = A.keys(h).size() * static_cast<std::size_t>(t_coordinates(A, N));
      if (coords >= target) break;
      if (A.nt() > 0 && t_coordinates(A, N + 1) > t_coordinates(A, N))
        ++N;
      else if (A.monoid != MonoidKind::None)
        ++h;
      else
        break;
    }
  }
  rs.horizon = N;
  HomCtxPtr ctx = make_hom_context(ext.action, N, h);
  rs.keys = static_cast<int>(ctx->keys.size());
  std::vector<HomElement> sym = symbol_values(hull, rs, ctx);

  std::map<Exp, HomElement> val;
  std::vector<HomElement> mvals;
  for (const auto& m : mons) {
    if (total_degree(m) == 0) {
      val.emplace(m, unit_hom(ctx));
    } else {
      std::size_t j = 0;
      while (m[j] == 0) ++j;
      Exp prev = m;
      --prev[j];
      val.emplace(m, val.at(prev) * sym[j]);
    }
    mvals.push_back(val.at(m));
  }
  std::vector<std::set<Exp>> supp(ctx->keys.size());
  for (const auto& x : mvals)
    for (std::size_t k = 0; k < x.values().size(); ++k)
      for (const auto& [e, c] : x.values()[k].terms()) supp[k].insert(e);
  std::size_t rows = 0;
  for (const auto& s : supp) rows += s.size();
  const RatFunc zero = f.zero();
  Matrix<RatFunc> M(rows, mons.size(), zero);
  for (std::size_t j = 0; j < mons.size(); ++j) {
    std::size_t r = 0;
    for (std::size_t k = 0; k < supp.size(); ++k)
      for (const auto& e : supp[k]) M(r++, j) = mvals[j].values()[k].coeff(e);
  }

  std::vector<Poly<RatFunc>> accepted;
  for (const auto& v : kernel(M, zero)) {
    Poly<RatFunc> R(rs.sp, zero);
    for (std::size_t j = 0; j < mons.size(); ++j) R.add_term(mons[j], v[j]);
    // Skip multiples of relations already accepted.
    std::vector<std::vector<RatFunc>> cols;
    for (const auto& acc : accepted) {
      const int da = acc.total_degree();
      for (const auto& m : mons) {
        if (total_degree(m) + da > degree) continue;
        cols.push_back(coefficient_vector(acc * Poly<RatFunc>::monomial(rs.sp, m, f.one()), mons, zero));
      }
    }
    bool fresh = true;
    if (!cols.empty()) {
      Matrix<RatFunc> S(mons.size(), cols.size() + 1, zero);
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < mons.size(); ++i) S(i, c) = cols[c][i];
      Matrix<RatFunc> S0(mons.size(), cols.size(), zero);
      for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < mons.size(); ++i) S0(i, c) = cols[c][i];
      auto rv = coefficient_vector(R, mons, zero);
      for (std::size_t i = 0; i < mons.size(); ++i) S(i, cols.size()) = rv[i];
      fresh = rank(S) > rank(S0);
    }
    if (fresh) accepted.push_back(R);
  }

  // Re-verify at a larger sampling horizon.
  HomCtxPtr big = truncated ? make_hom_context(ext.action, A.nt() ? N + 2 : N, A.monoid != MonoidKind::None ? h + 1 : h)
                            : ctx;
  std::vector<HomElement> bsym = truncated ? symbol_values(hull, rs, big) : sym;
  for (const auto& R : accepted) {
    Poly<RatFunc> nr = normalize_relation(R, f);
    if (!eval_relation(nr, bsym).is_zero())
      throw math_error("relations", "relation " + to_string(nr) + " fails at the verification horizon");
    rs.relations.push_back(std::move(nr));
  }
  return rs;
}

std::vector<Poly<RatFunc>> change_basis(const ExtensionDesc& ext, const std::vector<RatFunc>& v, int horizon) {
  if (v.size() != ext.n()) throw math_error("separability", "alternative basis has the wrong size");
  ActionPtr tu = make_theta_u(ext);
  SpacePtr W = tu->t_space(horizon);
  std::vector<int> wv(ext.n());
  std::iota(wv.begin(), wv.end(), 0);
  std::vector<Poly<RatFunc>> psi;
  for (const auto& vi : v) psi.push_back(tu->theta_series(vi, W) - Poly<RatFunc>::constant(W, vi));
  std::vector<Poly<RatFunc>> phi;
  try {
    phi = formal_inverse(psi, wv);
  } catch (const not_invertible&) {
    throw math_error("separability", "singular Jacobian: the alternative basis is not separating");
  }
  ExtensionDesc ev = ext;
  ev.u = v;
  ActionPtr tv = make_theta_u(ev);
  for (std::size_t x = 0; x < ext.field.size(); ++x) {
    RatFunc a = ext.field.var(static_cast<int>(x));
    if (!(tv->theta_series(a, W) == apply_change(phi, tu->theta_series(a, W))))
      throw math_error("change_basis", "theta_v differs from phi o theta_u on " + a.to_string());
  }
  return phi;
}

Poly<RatFunc> apply_change(const std::vector<Poly<RatFunc>>& phi, const Poly<RatFunc>& f) {
  std::map<int, Poly<RatFunc>> subs;
  for (std::size_t j = 0; j < phi.size(); ++j) subs.emplace(static_cast<int>(j), phi[j].rehome(f.space()));
  return series_compose(f, subs, f.space());
}

}  // namespace modalg
