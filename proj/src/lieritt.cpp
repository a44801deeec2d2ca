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

#include "modalg/lieritt.hpp"

#include <gmpxx.h>

#include <set>

#include "modalg/matrix.hpp"
#include "modalg/parse.hpp"

namespace modalg {

namespace {

std::string index_suffix(const Exp& k, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? sep : "") + std::to_string(k[i]);
  return s;
}

Scalar binom(int n, int k, std::uint32_t p) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(mpq_class(r), p);
}

Scalar multi_binom(const Exp& top, const Exp& k, std::uint32_t p) {
  Scalar r(1, p);
  for (std::size_t i = 0; i < k.size(); ++i) r *= binom(top[i], k[i], p);
  return r;
}

Exp restrict(const Exp& e, const std::vector<int>& vars) {
  Exp r;
  for (int v : vars) r.push_back(e[v]);
  return r;
}

}  // namespace

// Component printed grouped by w-monomial: "y*a1 + (1 + a1)*w".
std::string format_series(const GammaSpace& g, const Poly<RatFunc>& f) {
  std::map<Exp, Poly<RatFunc>, GrLex> groups;
  for (const auto& [e, c] : f.terms()) {
    Exp we = restrict(e, g.wvars);
    Exp rest = e;
    for (int v : g.wvars) rest[v] = 0;
    auto it = groups.try_emplace(we, Poly<RatFunc>(g.sp, f.zero_coeff())).first;
    it->second.add_term(rest, c);
  }
  if (groups.empty()) return "0";
  std::string out;
  for (const auto& [we, c] : groups) {
    Exp full(g.sp->size(), 0);
    for (std::size_t j = 0; j < g.wvars.size(); ++j) full[g.wvars[j]] = we[j];
    const std::string mon = monomial_string(*g.sp, full);
    std::string cs = to_string(c, true);
    std::string piece;
    bool neg = false;
    if (mon.empty()) {
      piece = cs;
    } else if (cs == "1") {
      piece = mon;
    } else if (cs == "-1") {
      piece = mon;
      neg = true;
    } else if (c.size() == 1) {
      piece = cs + "*" + mon;
    } else {
      piece = "(" + cs + ")*" + mon;
    }
    if (!neg && c.size() == 1 && !piece.empty() && piece[0] == '-') {
      neg = true;
      piece = piece.substr(1);
    }
    if (out.empty())
      out = neg ? "-" + piece : piece;
    else
      out += (neg ? " - " : " + ") + piece;
  }
  return out;
}

std::vector<std::string> w_names(std::size_t n) {
  if (n == 1) return {"w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i + 1));
  return out;
}

GammaPtr make_gamma(const NilAlgebra& A, std::size_t n, int horizon) {
  if (A.order < 1) throw schema_error("nilpotency order must be at least 1");
  auto g = std::make_shared<GammaSpace>();
  g->A = A;
  g->n = n;
  g->horizon = horizon;
  std::vector<std::string> names = A.eps;
  for (const auto& w : w_names(n)) names.push_back(w);
  std::vector<int> all(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) all[i] = static_cast<int>(i);
  g->epsvars.assign(all.begin(), all.begin() + static_cast<long>(A.eps.size()));
  g->wvars.assign(all.begin() + static_cast<long>(A.eps.size()), all.end());
  std::vector<Constraint> cons{Constraint{all, horizon}};
  if (!g->epsvars.empty()) cons.push_back(Constraint{g->epsvars, A.order - 1});
  g->sp = make_space(names, cons);
  return g;
}

std::string InfTransform::to_string() const {
  if (phi.size() == 1) return format_series(*g, phi[0]);
  std::string s = "(";
  for (std::size_t i = 0; i < phi.size(); ++i) s += (i ? ", " : "") + format_series(*g, phi[i]);
  return s + ")";
}

InfTransform identity_transform(const GammaPtr& g) {
  InfTransform t{g, {}};
  const RatFunc one = g->A.base.one();
  for (int v : g->wvars) t.phi.push_back(Poly<RatFunc>::variable(g->sp, v, one));
  return t;
}

InfTransform parse_transform(const GammaPtr& g, const std::vector<std::string>& comps) {
  if (comps.size() != g->n) throw schema_error("transform needs " + std::to_string(g->n) + " components");
  InfTransform t{g, {}};
  for (const auto& c : comps) t.phi.push_back(parse_series(c, g->sp, g->A.base.vars, g->A.base.p));
  check_transform(t);
  return t;
}

void check_transform(const InfTransform& f) {
  auto id = identity_transform(f.g);
  for (std::size_t i = 0; i < f.phi.size(); ++i) {
    const Poly<RatFunc> d = f.phi[i] - id.phi[i];
    for (const auto& [e, c] : d.terms())
      if (degree_in(e, f.g->epsvars) == 0)
        throw math_error("gamma", "component " + std::to_string(i + 1) + " is not the identity modulo N(A)");
  }
}

InfTransform compose(const InfTransform& phi, const InfTransform& psi) {
  if (!same_space(phi.g->sp, psi.g->sp)) throw context_mismatch("transforms over different test algebras");
  std::map<int, Poly<RatFunc>> subs;
  for (std::size_t j = 0; j < psi.phi.size(); ++j) subs.emplace(phi.g->wvars[j], psi.phi[j]);
  InfTransform r{phi.g, {}};
  for (const auto& c : phi.phi) r.phi.push_back(series_compose(c, subs, phi.g->sp));
  return r;
}

InfTransform invert(const InfTransform& phi) {
  const InfTransform id = identity_transform(phi.g);
  InfTransform d{phi.g, {}};
  for (std::size_t i = 0; i < phi.phi.size(); ++i) d.phi.push_back(phi.phi[i] - id.phi[i]);
  InfTransform psi = id;
  for (int iter = 0; iter <= phi.g->horizon + phi.g->A.order + 2; ++iter) {
    InfTransform next = compose(d, psi);
    for (std::size_t i = 0; i < next.phi.size(); ++i) next.phi[i] = id.phi[i] - next.phi[i];
    if (next == psi) return psi;
    psi = std::move(next);
  }
  throw horizon_error("inverse iteration did not converge");
}

InfTransform reduce(const InfTransform& phi) {
  InfTransform r{phi.g, {}};
  for (const auto& c : phi.phi) {
    Poly<RatFunc> x(phi.g->sp, c.zero_coeff());
    for (const auto& [e, k] : c.terms())
      if (degree_in(e, phi.g->epsvars) == 0) x.add_term(e, k);
    r.phi.push_back(std::move(x));
  }
  return r;
}

std::string y_name(std::size_t n, int i, const Exp& k) {
  std::string s = n == 1 ? "Y" : "Y" + std::to_string(i + 1);
  if (total_degree(k) > 0) s += "[" + index_suffix(k, ",") + "]";
  return s;
}

std::vector<int> diff_weight_vars(const DiffRing& r) {
  std::vector<int> out;
  for (std::size_t v = 0; v < r.syms.size(); ++v)
    if (total_degree(r.syms[v].second) == 0) out.push_back(static_cast<int>(v));
  out.insert(out.end(), r.wvars.begin(), r.wvars.end());
  return out;
}

DiffRingPtr make_diff_ring(const FieldDesc& L, std::size_t n, int order, int horizon) {
  auto r = std::make_shared<DiffRing>();
  r->L = L;
  r->n = n;
  r->order = order;
  r->horizon = horizon;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    auto ks = multi_indices(n, order);
    std::stable_sort(ks.begin(), ks.end(), [](const Exp& a, const Exp& b) { return total_degree(a) > total_degree(b); });
    for (const auto& k : ks) {
      names.push_back(y_name(n, static_cast<int>(i), k));
      r->syms.emplace_back(static_cast<int>(i), k);
    }
  }
  for (const auto& w : w_names(n)) {
    r->wvars.push_back(static_cast<int>(names.size()));
    names.push_back(w);
  }
  r->sp = make_space(names, {Constraint{diff_weight_vars(*r), horizon}});
  return r;
}

int DiffPoly::order() const {
  int o = 0;
  for (const auto& [e, c] : f.terms())
    for (std::size_t v = 0; v < ring->syms.size(); ++v)
      if (e[v]) o = std::max(o, total_degree(ring->syms[v].second));
  return o;
}

DiffPoly parse_diffpoly(const DiffRingPtr& ring, const std::string& text) {
  return DiffPoly{ring, parse_series(text, ring->sp, ring->L.vars, ring->L.p)};
}

DiffPoly diffpoly_theta(const DiffPoly& F, const Exp& l) {
  const DiffRing& R = *F.ring;
  const int dl = total_degree(l);
  DiffRingPtr R2 = make_diff_ring(R.L, R.n, R.order + dl, R.horizon);
  std::vector<std::string> names = R2->sp->names();
  std::vector<int> svars, ws = R2->wvars;
  for (std::size_t j = 0; j < R.n; ++j) {
    svars.push_back(static_cast<int>(names.size()));
    names.push_back("s#" + std::to_string(j));
  }
  std::vector<int> joint = diff_weight_vars(*R2);
  joint.insert(joint.end(), svars.begin(), svars.end());
  SpacePtr S = make_space(names, {Constraint{joint, R.horizon}, Constraint{svars, dl}});
  const RatFunc one = R.L.one();
  const std::uint32_t p = R.L.p;
  std::vector<Poly<RatFunc>> imgs;
  for (std::size_t v = 0; v < R.syms.size(); ++v) {
    const auto& [i, k] = R.syms[v];
    Poly<RatFunc> img(S, R.L.zero());
    for (const auto& m : multi_indices(R.n, dl)) {
      Exp km = k;
      for (std::size_t j = 0; j < R.n; ++j) km[j] += m[j];
      Exp e(S->size(), 0);
      e[S->require(y_name(R.n, i, km))] = 1;
      for (std::size_t j = 0; j < R.n; ++j) e[svars[j]] = m[j];
      img.add_term(e, R.L.constant(multi_binom(km, k, p)));
    }
    imgs.push_back(std::move(img));
  }
  for (std::size_t j = 0; j < R.n; ++j)
    imgs.push_back(Poly<RatFunc>::variable(S, ws[j], one) + Poly<RatFunc>::variable(S, svars[j], one));
  std::vector<const Poly<RatFunc>*> ptrs;
  for (const auto& x : imgs) ptrs.push_back(&x);
  Poly<RatFunc> full = substitute(F.f, S, ptrs);
  Poly<RatFunc> out(R2->sp, R.L.zero());
  for (const auto& [e, c] : full.terms()) {
    if (restrict(e, svars) != l) continue;
    out.add_term(Exp(e.begin(), e.begin() + static_cast<long>(R2->sp->size())), c);
  }
  return DiffPoly{R2, std::move(out)};
}

Poly<RatFunc> hasse(const GammaSpace& g, const Poly<RatFunc>& f, const Exp& k) {
  const std::uint32_t p = g.A.base.p;
  Poly<RatFunc> r(g.sp, f.zero_coeff());
  for (const auto& [e, c] : f.terms()) {
    Exp we = restrict(e, g.wvars);
    bool ok = true;
    for (std::size_t j = 0; j < k.size(); ++j) ok = ok && we[j] >= k[j];
    if (!ok) continue;
    Exp d = e;
    for (std::size_t j = 0; j < k.size(); ++j) d[g.wvars[j]] -= k[j];
    const Scalar b = multi_binom(we, k, p);
    if (b.is_zero()) continue;
    r.add_term(d, c * RatFunc::constant(c.space(), b));
  }
  return r;
}

Poly<RatFunc> diffpoly_eval(const DiffPoly& F, const InfTransform& phi) {
  const DiffRing& R = *F.ring;
  const GammaSpace& g = *phi.g;
  if (R.n != g.n) throw context_mismatch("differential polynomial and transform differ in n");
  std::map<std::size_t, Poly<RatFunc>> cache;
  auto value = [&](std::size_t v) -> const Poly<RatFunc>& {
    auto it = cache.find(v);
    if (it == cache.end()) {
      const auto& [i, k] = R.syms[v];
      it = cache.emplace(v, hasse(g, phi.phi[i], k)).first;
    }
    return it->second;
  };
  Poly<RatFunc> acc(g.sp, R.L.zero());
  for (const auto& [e, c] : F.f.terms()) {
    Exp we(g.sp->size(), 0);
    for (std::size_t j = 0; j < g.n; ++j) we[g.wvars[j]] = e[R.wvars[j]];
    Poly<RatFunc> t = Poly<RatFunc>::monomial(g.sp, we, c);
    for (std::size_t v = 0; v < R.syms.size() && !t.is_zero(); ++v)
      if (e[v]) t *= value(v).pow(e[v]);
    acc += t;
  }
  return acc;
}

std::string ZeroSet::shape() const {
  if (!consistent) return "empty";
  return general.to_string();
}

namespace {

std::string unknown_name(std::size_t n, int i, const Exp& k) {
  if (n == 1) return "a" + std::to_string(k[0]);
  return "a" + std::to_string(i + 1) + "_" + index_suffix(k, "_");
}

// One equation per (generator, w-monomial): a polynomial in the eps variables of g.
struct EqSystem {
  std::vector<std::pair<std::size_t, Exp>> rows;
  std::map<std::pair<std::size_t, Exp>, std::size_t> index;
  std::vector<std::map<Exp, RatFunc>> eqs;  // eps-exponent -> coefficient
};

EqSystem equations(const LieRittIdeal& I, const InfTransform& phi) {
  EqSystem s;
  const GammaSpace& g = *phi.g;
  for (std::size_t gi = 0; gi < I.gens.size(); ++gi) {
    const int exact = std::min(g.horizon, I.ring->horizon) - I.gens[gi].order();
    Poly<RatFunc> v = diffpoly_eval(I.gens[gi], phi);
    for (const auto& [e, c] : v.terms()) {
      if (total_degree(e) > exact) continue;
      std::pair<std::size_t, Exp> key{gi, restrict(e, g.wvars)};
      auto it = s.index.find(key);
      if (it == s.index.end()) {
        it = s.index.emplace(key, s.rows.size()).first;
        s.rows.push_back(key);
        s.eqs.emplace_back();
      }
      s.eqs[it->second].emplace(restrict(e, g.epsvars), c);
    }
  }
  return s;
}

}  // namespace

ZeroSet zero_set_solve(const LieRittIdeal& I, int order, int horizon) {
  const std::size_t n = I.ring->n;
  const FieldDesc& L = I.ring->L;
  ZeroSet z;
  z.horizon = horizon;
  z.order = order;
  if (order <= 1) {
    auto g0 = make_gamma(NilAlgebra{L, {}, 1}, n, horizon);
    z.general = identity_transform(g0);
    auto s = equations(I, z.general);
    z.equations = s.rows.size();
    for (const auto& eq : s.eqs)
      if (!eq.empty()) z.consistent = false;
    return z;
  }
  // Generic Phi with one unknown per coefficient reachable by the lowest-order generator.
  int low = horizon;
  for (const auto& F : I.gens) low = std::min(low, F.order());
  const int reach = std::min(horizon, I.ring->horizon) - 1 - low;
  std::vector<std::string> unames;
  std::vector<std::pair<int, Exp>> ukeys;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& k : multi_indices(n, horizon - 1)) {
      if (total_degree(k) > reach) {
        z.beyond_horizon.push_back(unknown_name(n, static_cast<int>(i), k));
        continue;
      }
      unames.push_back(unknown_name(n, static_cast<int>(i), k));
      ukeys.emplace_back(static_cast<int>(i), k);
    }
  auto G = make_gamma(NilAlgebra{L, unames, order}, n, horizon);
  InfTransform gen = identity_transform(G);
  for (std::size_t u = 0; u < unames.size(); ++u) {
    Exp e(G->sp->size(), 0);
    e[G->epsvars[u]] = 1;
    for (std::size_t j = 0; j < n; ++j) e[G->wvars[j]] = ukeys[u].second[j];
    gen.phi[ukeys[u].first].add_term(e, L.one());
  }
  EqSystem s = equations(I, gen);
  z.equations = s.rows.size();
  const std::size_t nu = unames.size();
  for (const auto& eq : s.eqs)
    if (eq.count(Exp(nu, 0))) {
      z.consistent = false;
      z.general = identity_transform(make_gamma(NilAlgebra{L, {}, 1}, n, horizon));
      return z;
    }
  const RatFunc zero = L.zero();
  Matrix<RatFunc> J(s.rows.size(), nu, zero);
  for (std::size_t r = 0; r < s.rows.size(); ++r)
    for (const auto& [ee, c] : s.eqs[r])
      if (total_degree(ee) == 1)
        for (std::size_t u = 0; u < nu; ++u)
          if (ee[u]) J(r, u) = c;
  Matrix<RatFunc> Rr = J;
  std::vector<std::size_t> piv = rref(Rr);
  std::set<std::size_t> pivots(piv.begin(), piv.end());
  std::vector<std::size_t> free;
  for (std::size_t u = 0; u < nu; ++u) {
    if (!pivots.count(u)) free.push_back(u);
  }
  for (auto u : free) z.params.push_back(unames[u]);

  auto P = make_gamma(NilAlgebra{L, z.params, order}, n, horizon);
  // sol[u]: value of unknown u as a series in the free parameters (eps-part only).
  std::vector<Poly<RatFunc>> sol(nu, Poly<RatFunc>(P->sp, zero));
  auto param_var = [&](std::size_t j) {
    Exp e(P->sp->size(), 0);
    e[P->epsvars[j]] = 1;
    return e;
  };
  for (std::size_t j = 0; j < free.size(); ++j) sol[free[j]].add_term(param_var(j), L.one());
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < free.size(); ++j)
      if (!Rr(r, free[j]).is_zero()) sol[piv[r]].add_term(param_var(j), -Rr(r, free[j]));

  auto build = [&] {
    InfTransform t = identity_transform(P);
    for (std::size_t u = 0; u < nu; ++u) {
      Exp we(P->sp->size(), 0);
      for (std::size_t j = 0; j < n; ++j) we[P->wvars[j]] = ukeys[u].second[j];
      t.phi[ukeys[u].first] += sol[u] * Poly<RatFunc>::monomial(P->sp, we, L.one());
    }
    return t;
  };

  for (int d = 2; d < order; ++d) {
    InfTransform cur = build();
    EqSystem res = equations(I, cur);
    std::map<Exp, std::vector<std::pair<std::size_t, RatFunc>>> byMon;
    for (std::size_t r = 0; r < res.rows.size(); ++r)
      for (const auto& [ee, c] : res.eqs[r])
        if (total_degree(ee) == d) byMon[ee].emplace_back(r, c);
    if (byMon.empty()) continue;
    // Corrections of degree d enter the degree-d residual linearly through J.
    for (const auto& [mu, entries] : byMon) {
      std::vector<std::size_t> rows;
      for (std::size_t r = 0; r < res.rows.size(); ++r) {
        auto it = s.index.find(res.rows[r]);
        if (it != s.index.end()) rows.push_back(r);
      }
      Matrix<RatFunc> M(rows.size(), piv.size(), zero);
      std::vector<RatFunc> b(rows.size(), zero);
      for (std::size_t q = 0; q < rows.size(); ++q) {
        std::size_t orow = s.index.at(res.rows[rows[q]]);
        for (std::size_t c = 0; c < piv.size(); ++c) M(q, c) = J(orow, piv[c]);
      }
      for (const auto& [r, c] : entries) {
        auto pos = std::find(rows.begin(), rows.end(), r);
        if (pos == rows.end()) {
          z.obstruction = "degree " + std::to_string(d) + " equation outside the linear system";
          break;
        }
        b[static_cast<std::size_t>(pos - rows.begin())] = -c;
      }
      if (!z.obstruction.empty()) break;
      auto x = solve(M, b, zero);
      if (!x) {
        z.obstruction = "no degree-" + std::to_string(d) + " correction for " + RatFunc(MPoly::monomial(
                                                                                    make_space(z.params), mu, Scalar(1, L.p)))
                                                                                    .to_string();
        break;
      }
      Exp full(P->sp->size(), 0);
      for (std::size_t j = 0; j < mu.size(); ++j) full[P->epsvars[j]] = mu[j];
      for (std::size_t c = 0; c < piv.size(); ++c)
        if (!(*x)[c].is_zero()) sol[piv[c]].add_term(full, (*x)[c]);
    }
    if (!z.obstruction.empty()) break;
  }
  z.general = build();
  if (z.obstruction.empty()) {
    EqSystem fin = equations(I, z.general);
    for (const auto& eq : fin.eqs)
      if (!eq.empty()) z.obstruction = "solution family fails at the horizon";
  }
  return z;
}

GroupTag identify_formal_group(const ZeroSet& z) {
  if (!z.consistent) return {"empty", {}};
  if (z.params.empty()) return {"trivial", {}};
  if (!z.obstruction.empty()) return {"unclassified", {}};
  const GammaSpace& g = *z.general.g;
  const FieldDesc& L = g.A.base;
  const std::size_t k = z.params.size();
  for (const auto& c : z.general.phi)
    for (const auto& [e, x] : c.terms())
      if (degree_in(e, g.epsvars) > 1) return {"unclassified", {}};

  std::vector<std::string> names = z.params;
  for (const auto& p : z.params) names.push_back(p + "'");
  auto G2 = make_gamma(NilAlgebra{L, names, std::max(z.order, 3)}, g.n, g.horizon);
  auto embed = [&](bool second) {
    std::vector<Poly<RatFunc>> imgs;
    for (std::size_t j = 0; j < k; ++j)
      imgs.push_back(Poly<RatFunc>::variable(G2->sp, G2->epsvars[second ? k + j : j], L.one()));
    for (int w : G2->wvars) imgs.push_back(Poly<RatFunc>::variable(G2->sp, w, L.one()));
    std::vector<const Poly<RatFunc>*> ptrs;
    for (const auto& x : imgs) ptrs.push_back(&x);
    InfTransform t{G2, {}};
    for (const auto& c : z.general.phi) t.phi.push_back(substitute(c, G2->sp, ptrs));
    return t;
  };
  InfTransform A = embed(false), B = embed(true);
  InfTransform C = compose(A, B);

  // Template T(c) = T0 + sum_j c_j T_j; read off c from C.
  std::vector<std::map<std::pair<std::size_t, Exp>, RatFunc>> Tj(k);
  std::map<std::pair<std::size_t, Exp>, std::map<Exp, RatFunc>> Rc;  // (component, w) -> ab-monomial -> coeff
  const InfTransform id = identity_transform(G2);
  for (std::size_t i = 0; i < A.phi.size(); ++i) {
    for (const auto& [e, x] : A.phi[i].terms()) {
      Exp ee = restrict(e, G2->epsvars);
      for (std::size_t j = 0; j < k; ++j)
        if (ee[j]) Tj[j].emplace(std::make_pair(i, restrict(e, G2->wvars)), x);
    }
    const Poly<RatFunc> d = C.phi[i] - id.phi[i];
    for (const auto& [e, x] : d.terms()) Rc[{i, restrict(e, G2->wvars)}].emplace(restrict(e, G2->epsvars), x);
  }
  std::set<Exp> abmons;
  for (const auto& [pos, m] : Rc)
    for (const auto& [mu, x] : m) abmons.insert(mu);
  std::vector<Poly<RatFunc>> c(k, Poly<RatFunc>(G2->sp, L.zero()));
  for (const auto& mu : abmons) {
    std::vector<std::pair<std::size_t, Exp>> rows;
    for (const auto& [pos, m] : Rc) rows.push_back(pos);
    for (const auto& t : Tj)
      for (const auto& [pos, x] : t)
        if (std::find(rows.begin(), rows.end(), pos) == rows.end()) rows.push_back(pos);
    std::vector<std::pair<std::size_t, Exp>> use;
    for (const auto& r : rows)
      if (total_degree(r.second) + total_degree(mu) <= G2->horizon) use.push_back(r);
    Matrix<RatFunc> M(use.size(), k, L.zero());
    std::vector<RatFunc> b(use.size(), L.zero());
    for (std::size_t q = 0; q < use.size(); ++q) {
      for (std::size_t j = 0; j < k; ++j) {
        auto it = Tj[j].find(use[q]);
        if (it != Tj[j].end()) M(q, j) = it->second;
      }
      auto it = Rc.find(use[q]);
      if (it != Rc.end()) {
        auto jt = it->second.find(mu);
        if (jt != it->second.end()) b[q] = jt->second;
      }
    }
    auto x = solve(M, b, L.zero());
    if (!x) return {"unclassified", {}};
    Exp full(G2->sp->size(), 0);
    for (std::size_t j = 0; j < mu.size(); ++j) full[G2->epsvars[j]] = mu[j];
    for (std::size_t j = 0; j < k; ++j)
      if (!(*x)[j].is_zero()) c[j].add_term(full, (*x)[j]);
  }
  // Verify T(c) = C.
  {
    std::vector<Poly<RatFunc>> imgs = c;
    for (std::size_t j = 0; j < k; ++j) imgs.push_back(Poly<RatFunc>::variable(G2->sp, G2->epsvars[k + j], L.one()));
    for (int w : G2->wvars) imgs.push_back(Poly<RatFunc>::variable(G2->sp, w, L.one()));
    std::vector<const Poly<RatFunc>*> ptrs;
    for (const auto& x : imgs) ptrs.push_back(&x);
    for (std::size_t i = 0; i < A.phi.size(); ++i)
      if (!(substitute(A.phi[i], G2->sp, ptrs) == C.phi[i]))
        return {"unclassified", {}};
  }
  GroupTag out;
  bool additive = true, multiplicative = true;
  for (std::size_t j = 0; j < k; ++j) {
    Poly<RatFunc> a = Poly<RatFunc>::variable(G2->sp, G2->epsvars[j], L.one());
    Poly<RatFunc> b = Poly<RatFunc>::variable(G2->sp, G2->epsvars[k + j], L.one());
    additive = additive && c[j] == a + b;
    multiplicative = multiplicative && c[j] == a + b + a * b;
    out.law.push_back(z.params[j] + "'' = " + to_string(c[j], true));
  }
  // Pure templates: each parameter multiplies a single w-monomial with constant coefficient.
  bool pure = true;
  for (const auto& t : Tj) {
    if (t.size() != 1) pure = false;
    for (const auto& [pos, x] : t)
      if (!L.in_base(x) || !x.num().is_constant()) pure = false;
  }
  const std::string power = k > 1 ? "^" + std::to_string(k) : "";
  if (additive)
    out.tag = "Ĝ_a" + power + (pure ? "" : " (conjugate)");
  else if (multiplicative)
    out.tag = "Ĝ_m" + power + (pure ? "" : " (via G̃_*)");
  else
    out.tag = "unclassified";
  return out;
}

std::string u_name(std::size_t n, int j, const Exp& k) {
  if (n == 1) return "u" + std::to_string(k[0]);
  return "u" + std::to_string(j + 1) + "_" + index_suffix(k, "_");
}

GroupLaw group_law_coeffs(std::size_t n, int horizon) {
  GroupLaw gl;
  gl.n = n;
  gl.horizon = horizon;
  std::vector<std::string> names;
  auto ks = multi_indices(n, horizon);
  for (const char* pre : {"u", "v"})
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& k : ks) {
        std::string nm = u_name(n, static_cast<int>(j), k);
        nm[0] = pre[0];
        names.push_back(nm);
      }
  gl.sp = make_space(names);
  const std::size_t nuv = names.size();
  std::vector<int> wv;
  for (const auto& w : w_names(n)) {
    wv.push_back(static_cast<int>(names.size()));
    names.push_back(w);
  }
  SpacePtr S = make_space(names, {Constraint{wv, horizon}});
  const Scalar one(1, 0);
  auto var = [&](int v) { return MPoly::variable(S, v, one); };
  auto wmon = [&](const Exp& k) {
    Exp e(S->size(), 0);
    for (std::size_t j = 0; j < n; ++j) e[wv[j]] = k[j];
    return MPoly::monomial(S, e, one);
  };
  std::vector<MPoly> phi;
  for (std::size_t j = 0; j < n; ++j) {
    MPoly f(S, Scalar(0, 0));
    for (std::size_t q = 0; q < ks.size(); ++q) f += var(static_cast<int>(j * ks.size() + q)) * wmon(ks[q]);
    phi.push_back(std::move(f));
  }
  std::vector<std::vector<MPoly>> pw(n);
  for (std::size_t j = 0; j < n; ++j) {
    pw[j].push_back(MPoly::constant(S, one));
    for (int e = 1; e <= horizon; ++e) pw[j].push_back(pw[j].back() * phi[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    MPoly acc(S, Scalar(0, 0));
    for (std::size_t q = 0; q < ks.size(); ++q) {
      MPoly t = var(static_cast<int>(n * ks.size() + i * ks.size() + q));
      for (std::size_t j = 0; j < n; ++j) t *= pw[j][ks[q][j]];
      acc += t;
    }
    for (const auto& l : ks) gl.coeffs.emplace(std::make_pair(static_cast<int>(i), l), MPoly(gl.sp, Scalar(0, 0)));
    for (const auto& [e, c] : acc.terms()) {
      Exp l = restrict(e, wv);
      gl.coeffs.at({static_cast<int>(i), l}).add_term(Exp(e.begin(), e.begin() + static_cast<long>(nuv)), c);
    }
  }
  return gl;
}

}  // namespace modalg
