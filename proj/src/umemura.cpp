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

#include "modalg/umemura.hpp"

#include <set>

#include "modalg/matrix.hpp"

namespace modalg {

UmemuraProblem make_umemura_problem(const ExtensionDesc& ext, int horizon, int diff_order, int degree, int order) {
  UmemuraProblem pb{hull_generators(ext, horizon), {}, order, horizon};
  pb.relations = find_relations(pb.hull, diff_order, degree);
  return pb;
}

LieRittIdeal umemura_ideal(const UmemuraProblem& pb) {
  const HullPresentation& H = pb.hull;
  const ExtensionDesc& ext = H.ext;
  const FieldDesc& L = ext.field;
  const RelationSet& rs = pb.relations;
  const std::size_t n = ext.n();
  const int K = rs.diff_order, N = pb.horizon;
  DiffRingPtr R = make_diff_ring(L, n, K, N);
  for (const auto& t : ext.action->tnames)
    if (R->sp->index(t) >= 0) throw schema_error("action variable '" + t + "' clashes with Y/w names");

  // S-space: t, then the ring variables, then s with theta(Y) = sum Y^(l) s^l.
  std::vector<std::string> extra = R->sp->names();
  std::vector<int> svars;
  for (std::size_t j = 0; j < n; ++j) {
    svars.push_back(static_cast<int>(extra.size()));
    extra.push_back("s#" + std::to_string(j));
  }
  std::vector<int> weight = diff_weight_vars(*R);
  weight.insert(weight.end(), svars.begin(), svars.end());
  HomCtxPtr cS = make_hom_context(ext.action, H.ctx->horizon, H.ctx->h, extra,
                                  {Constraint{weight, N + K}, Constraint{svars, K}});
  HomCtxPtr cR = make_hom_context(ext.action, H.ctx->horizon, H.ctx->h, R->sp->names(),
                                  {Constraint{diff_weight_vars(*R), N}});
  const std::size_t nt = ext.action->nt();
  const int off = static_cast<int>(nt);
  const RatFunc one = L.one();

  std::vector<Poly<RatFunc>> thetaY;
  for (std::size_t i = 0; i < n; ++i) {
    Poly<RatFunc> img(cS->sp, L.zero());
    for (std::size_t v = 0; v < R->syms.size(); ++v) {
      const auto& [c, k] = R->syms[v];
      if (c != static_cast<int>(i)) continue;
      Exp e(cS->sp->size(), 0);
      e[off + static_cast<int>(v)] = 1;
      for (std::size_t j = 0; j < n; ++j) e[off + svars[j]] = k[j];
      img.add_term(e, one);
    }
    thetaY.push_back(std::move(img));
  }
  std::map<Exp, Poly<RatFunc>> ypow;
  auto theta_pow = [&](const Exp& m) -> const Poly<RatFunc>& {
    auto it = ypow.find(m);
    if (it != ypow.end()) return it->second;
    Poly<RatFunc> p = Poly<RatFunc>::constant(cS->sp, one);
    for (std::size_t i = 0; i < n; ++i)
      if (m[i]) p *= thetaY[i].pow(m[i]);
    return ypow.emplace(m, std::move(p)).first->second;
  };

  // Values of the symbols per key, in cR.
  const std::size_t nkeys = cR->keys.size();
  std::map<int, std::vector<Poly<RatFunc>>> twisted;
  std::vector<std::vector<Poly<RatFunc>>> symval;
  for (const auto& s : rs.symbols) {
    std::vector<Poly<RatFunc>> vals;
    if (s.base) {
      HomElement r = taylor_expand(L.var(s.var), H.ctx);
      for (const auto& v : r.values()) vals.push_back(v.rehome(cR->sp));
      symval.push_back(std::move(vals));
      continue;
    }
    auto it = twisted.find(s.var);
    if (it == twisted.end()) {
      auto cl = theta_closure(*H.theta_u, taylor_expand(L.var(s.var), H.ctx), N + K);
      std::vector<Poly<RatFunc>> acc(nkeys, Poly<RatFunc>(cS->sp, L.zero()));
      for (const auto& [m, x] : cl) {
        const auto& tp = theta_pow(m);
        for (std::size_t q = 0; q < nkeys; ++q) acc[q] += x.values()[q].rehome(cS->sp) * tp;
      }
      it = twisted.emplace(s.var, std::move(acc)).first;
    }
    for (std::size_t q = 0; q < nkeys; ++q) {
      Poly<RatFunc> v(cR->sp, L.zero());
      for (const auto& [e, c] : it->second[q].terms()) {
        bool hit = true;
        for (std::size_t j = 0; j < n; ++j) hit = hit && e[off + svars[j]] == s.k[j];
        if (!hit) continue;
        v.add_term(Exp(e.begin(), e.begin() + static_cast<long>(cR->sp->size())), c);
      }
      vals.push_back(std::move(v));
    }
    symval.push_back(std::move(vals));
  }

  const SpacePtr W = H.theta_u->t_space(N);
  std::map<std::string, Poly<RatFunc>> tcache;
  auto theta_coeff = [&](const RatFunc& c) -> const Poly<RatFunc>& {
    const std::string key = c.to_string();
    auto it = tcache.find(key);
    if (it == tcache.end()) it = tcache.emplace(key, H.theta_u->theta_series(c, W).rehome(cR->sp)).first;
    return it->second;
  };

  LieRittIdeal I{R, {}};
  std::set<std::string> seen;
  for (const auto& F : rs.relations) {
    for (std::size_t q = 0; q < nkeys; ++q) {
      Poly<RatFunc> acc(cR->sp, L.zero());
      for (const auto& [e, c] : F.terms()) {
        Poly<RatFunc> t = theta_coeff(c);
        for (std::size_t v = 0; v < e.size() && !t.is_zero(); ++v)
          if (e[v]) t *= symval[v][q].pow(e[v]);
        acc += t;
      }
      std::map<Exp, Poly<RatFunc>> byT;
      for (const auto& [e, c] : acc.terms()) {
        Exp te(e.begin(), e.begin() + off);
        auto jt = byT.try_emplace(te, Poly<RatFunc>(R->sp, L.zero())).first;
        jt->second.add_term(Exp(e.begin() + off, e.end()), c);
      }
      for (auto& [te, f] : byT) {
        if (f.is_zero()) continue;
        f *= f.leading_coeff().inverse();
        DiffPoly d{R, std::move(f)};
        if (seen.insert(d.to_string()).second) I.gens.push_back(std::move(d));
      }
    }
  }
  return I;
}

UmemuraPoints umemura_points(const UmemuraProblem& pb) {
  UmemuraPoints out;
  out.ideal = umemura_ideal(pb);
  out.zero_set = zero_set_solve(out.ideal, pb.order, pb.horizon);
  out.tag = identify_formal_group(out.zero_set);
  if (!out.zero_set.consistent) return out;

  const HullPresentation& H = pb.hull;
  const FieldDesc& L = H.ext.field;
  const GammaSpace& g = *out.zero_set.general.g;
  const SpacePtr W = H.theta_u->t_space(pb.horizon);
  std::vector<std::string> names;
  std::vector<HomElement> basis;
  for (const auto& x : H.lcal)
    if (x.name.rfind("rho0(", 0) != 0) {
      names.push_back(x.name);
      basis.push_back(x.value);
    }
  names.push_back("1");
  basis.push_back(unit_hom(H.ctx));
  std::vector<std::vector<RatFunc>> cols;
  for (const auto& b : basis) cols.push_back(coordinates(b));
  const RatFunc zero = L.zero();

  std::vector<Poly<RatFunc>> dphi;
  for (std::size_t i = 0; i < g.n; ++i)
    dphi.push_back(out.zero_set.general.phi[i] - Poly<RatFunc>::variable(g.sp, g.wvars[i], L.one()));

  for (int a : L.generators()) {
    auto cl = theta_closure(*H.theta_u, taylor_expand(L.var(a), H.ctx), pb.order - 1);
    std::vector<Poly<RatFunc>> series(basis.size(), Poly<RatFunc>(g.sp, zero));
    for (const auto& [k, x] : cl) {
      auto rhs = coordinates(x);
      Matrix<RatFunc> M(rhs.size(), basis.size(), zero);
      for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t r = 0; r < rhs.size(); ++r) M(r, j) = cols[j][r];
      auto c = solve(M, rhs, zero);
      if (!c) {
        out.unexpressed = "theta_u^(" + std::to_string(total_degree(k)) + ")(rho(" + L.vars->name(a) + "))";
        continue;
      }
      Poly<RatFunc> term = Poly<RatFunc>::constant(g.sp, L.one());
      for (std::size_t i = 0; i < g.n; ++i)
        if (k[i]) term *= dphi[i].pow(k[i]);
      if (term.is_zero()) continue;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (!(*c)[j].is_zero()) series[j] += H.theta_u->theta_series((*c)[j], W).rehome(g.sp) * term;
    }
    std::string s;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (series[j].is_zero()) continue;
      std::string v = format_series(g, series[j]);
      if (v.find(' ') != std::string::npos) v = "(" + v + ")";
      s += (s.empty() ? "" : " + ") + names[j] + " ⊗ " + v;
    }
    out.automorphism.push_back("phi(rho(" + L.vars->name(a) + ") ⊗ 1) = " + (s.empty() ? "0" : s));
  }
  return out;
}

}  // namespace modalg
