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

#include "modalg/pv.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "modalg/taylor.hpp"

namespace modalg {

namespace {

constexpr int kPointHeight = 3;
constexpr int kRelationDegree = 2;

void require_k(const PVData& d) {
  if (!d.field().base.empty())
    throw math_error("pv", "the base field must be the constant field (no base variables)");
}

std::string power(const std::string& name, int k) { return k == 1 ? name : name + "^" + std::to_string(k); }

// Signed exponents and coefficients of a Laurent polynomial.
std::vector<std::pair<Exp, Scalar>> laurent_terms(const RatFunc& f) {
  std::vector<std::pair<Exp, Scalar>> out;
  if (f.is_zero()) return out;
  if (f.den().size() != 1) throw math_error("ring", f.to_string() + " is not a Laurent polynomial");
  const auto& [de, dc] = *f.den().terms().begin();
  const Scalar inv = dc.inverse();
  for (const auto& [e, c] : f.num().terms()) {
    Exp s(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) s[i] = e[i] - de[i];
    out.emplace_back(std::move(s), c * inv);
  }
  return out;
}

RatFunc laurent_monomial(const SpacePtr& sp, const Exp& e, const Scalar& c) {
  const std::uint32_t p = c.characteristic();
  Exp pos(e.size(), 0), neg(e.size(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) (e[i] > 0 ? pos : neg)[i] = std::abs(e[i]);
  return RatFunc(MPoly::monomial(sp, pos, c), MPoly::monomial(sp, neg, Scalar(1, p)));
}

int abs_degree(const Exp& e) {
  int d = 0;
  for (int x : e) d += std::abs(x);
  return d;
}

bool only_on(const Exp& e, const std::vector<int>& allowed_negative) {
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] < 0 && std::find(allowed_negative.begin(), allowed_negative.end(), static_cast<int>(i)) ==
                        allowed_negative.end())
      return false;
  return true;
}

// Unit of the Laurent ring: c * monomial in the Laurent variables.
bool is_laurent_unit(const RatFunc& f, const std::vector<int>& laurent) {
  if (f.is_zero()) return false;
  auto t = laurent_terms(f);
  if (t.size() != 1) return false;
  for (std::size_t i = 0; i < t[0].first.size(); ++i)
    if (t[0].first[i] != 0 && std::find(laurent.begin(), laurent.end(), static_cast<int>(i)) == laurent.end())
      return false;
  return true;
}

// Products of `slots` groups of `width` symbols; "1" for an empty group.
std::string laurent_string(const RatFunc& f, const std::vector<std::string>& names, std::size_t width,
                           std::size_t slots, bool right_first) {
  auto terms = laurent_terms(f);
  if (terms.empty()) return "0";
  auto key = [&](const Exp& e) {
    Exp k = e;
    if (right_first) std::reverse(k.begin(), k.end());
    return k;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    int da = abs_degree(a.first), db = abs_degree(b.first);
    if (da != db) return da < db;
    return key(a.first) > key(b.first);
  });
  std::string out;
  for (const auto& [e, c] : terms) {
    std::string mon;
    for (std::size_t s = 0; s < slots; ++s) {
      std::string part;
      for (std::size_t i = 0; i < width; ++i) {
        int k = e[s * width + i];
        if (!k) continue;
        part += (part.empty() ? "" : "*") + power(names[i], k);
      }
      if (part.empty()) part = "1";
      mon += (s ? "⊗" : "") + part;
    }
    std::string cs = c.to_string();
    bool neg = cs[0] == '-';
    if (neg) cs = cs.substr(1);
    std::string t = cs == "1" ? mon : (mon == "1" ? cs : cs + "*" + mon);
    if (out.empty())
      out = neg ? "-" + t : t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out;
}

// Coordinates of target in the k-span of vals, if any.
std::optional<std::vector<Scalar>> span_coordinates(const RatFunc& target, const std::vector<RatFunc>& vals,
                                                    std::uint32_t p) {
  std::vector<RatFunc> all{target};
  all.insert(all.end(), vals.begin(), vals.end());
  for (const auto& r : linear_relations(all, p)) {
    if (r[0].is_zero()) continue;
    std::vector<Scalar> c;
    for (std::size_t j = 1; j < r.size(); ++j) c.push_back(-(r[j] / r[0]));
    return c;
  }
  return std::nullopt;
}

// Signed monomials in r symbols with sum |e_i| <= count; negative only where unit[i].
std::vector<Exp> symbol_monomials(const std::vector<bool>& unit, int count) {
  std::vector<Exp> out;
  const std::size_t r = unit.size();
  Exp e(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == r) {
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
      if (unit[i] && k > 0) {
        e[i] = -k;
        rec(i + 1, left - k);
      }
    }
    e[i] = 0;
  };
  rec(0, count);
  std::stable_sort(out.begin(), out.end(), [](const Exp& a, const Exp& b) { return abs_degree(a) < abs_degree(b); });
  return out;
}

RatFunc product(const std::vector<RatFunc>& vals, const Exp& e, const RatFunc& one) {
  RatFunc r = one;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i]) r *= vals[i].pow(e[i]);
  return r;
}

// k(x@1..x@c) for `copies` copies of the generators of L.
struct Tensor {
  FieldDesc L;
  FieldDesc T;
  std::size_t n = 0;
  int copies = 2;

  RatFunc embed(const RatFunc& f, int copy) const {
    if (n == 0) return T.constant(f.is_zero() ? Scalar(0, L.p) : f.scalar());
    std::vector<RatFunc> im;
    for (std::size_t v = 0; v < n; ++v) im.push_back(T.var(static_cast<int>(copy * n + v)));
    std::vector<const RatFunc*> ptrs;
    for (const auto& x : im) ptrs.push_back(&x);
    return substitute(f, ptrs);
  }
  // Images of the variables of Tensor `from` (copy j -> copy map[j]).
  RatFunc move(const RatFunc& f, const Tensor& from, const std::vector<int>& map) const {
    if (n == 0) return T.constant(f.is_zero() ? Scalar(0, L.p) : f.scalar());
    std::vector<RatFunc> im;
    for (int c = 0; c < from.copies; ++c)
      for (std::size_t v = 0; v < n; ++v) im.push_back(T.var(static_cast<int>(map[c] * n + v)));
    std::vector<const RatFunc*> ptrs;
    for (const auto& x : im) ptrs.push_back(&x);
    return substitute(f, ptrs);
  }
};

Tensor make_tensor(const FieldDesc& L, int copies) {
  Tensor t{L, {}, L.size(), copies};
  std::vector<std::string> names;
  for (int c = 1; c <= copies; ++c)
    for (std::size_t v = 0; v < t.n; ++v) names.push_back(L.vars->name(static_cast<int>(v)) + "@" + std::to_string(c));
  t.T = FieldDesc::make({}, names, L.p);
  for (int c = 0; c < copies; ++c)
    for (int v : L.laurent) t.T.laurent.push_back(static_cast<int>(c * t.n) + v);
  return t;
}

// D acting diagonally on R (x)_k R.
ActionPtr tensor_action(const ActionSpec& a, const Tensor& t) {
  if (a.custom) throw math_error("pv", "custom actions have no tensor action");
  auto r = std::make_shared<ActionSpec>(a);
  r->field = t.T;
  const std::size_t N = t.T.size();
  if (a.der == DerKind::Der) {
    r->der_images.assign(a.der_images.size(), std::vector<std::optional<RatFunc>>(N));
    for (std::size_t i = 0; i < a.der_images.size(); ++i)
      for (std::size_t v = 0; v < t.n; ++v)
        if (a.der_images[i][v])
          for (int c = 0; c < t.copies; ++c) r->der_images[i][c * t.n + v] = t.embed(*a.der_images[i][v], c);
  }
  if (a.der == DerKind::IterDer) {
    r->iter_images.assign(N, std::nullopt);
    for (std::size_t v = 0; v < t.n; ++v) {
      if (!a.iter_images[v]) continue;
      for (int c = 0; c < t.copies; ++c) {
        SeriesImage orig = *a.iter_images[v];
        r->iter_images[c * t.n + v] = [orig, t, c](const SpacePtr& sp) {
          return orig(sp).map_coeffs([&](const RatFunc& x) { return t.embed(x, c); });
        };
      }
    }
  }
  for (std::size_t g = 0; g < a.gens.size(); ++g) {
    const MonoidGen& src = a.gens[g];
    MonoidGen dst{src.name, std::vector<std::optional<RatFunc>>(N), {}};
    if (!src.inverse.empty()) dst.inverse.assign(N, std::nullopt);
    for (std::size_t v = 0; v < t.n; ++v)
      for (int c = 0; c < t.copies; ++c) {
        if (src.images[v]) dst.images[c * t.n + v] = t.embed(*src.images[v], c);
        if (!src.inverse.empty() && src.inverse[v]) dst.inverse[c * t.n + v] = t.embed(*src.inverse[v], c);
      }
    r->gens[g] = std::move(dst);
  }
  return r;
}

RatFunc subst(const RatFunc& f, const std::vector<RatFunc>& images) {
  std::vector<const RatFunc*> ptrs;
  for (const auto& x : images) ptrs.push_back(&x);
  return substitute(f, ptrs);
}

std::vector<std::string> copy_names(const std::vector<std::string>& names, int copies) {
  std::vector<std::string> out;
  for (int c = 1; c <= copies; ++c)
    for (const auto& n : names) out.push_back(n + "#" + std::to_string(c));
  return out;
}

struct MuResult {
  bool injective = true;
  bool spanning = true;
  std::size_t sources = 0;
  std::size_t targets = 0;
  std::string witness;
};

MuResult mu_images(const PVData& data, const HopfPresentation& H, int degree) {
  const FieldDesc& L = data.field();
  Tensor t = make_tensor(L, 2);
  std::vector<RatFunc> tv, gens;
  for (std::size_t i = 0; i < t.T.size(); ++i) tv.push_back(t.T.var(static_cast<int>(i)));
  for (const auto& g : H.gens) gens.push_back(tv.empty() ? t.T.constant(g.is_zero() ? Scalar(0, L.p) : g.scalar()) : subst(g, tv));
  std::vector<int> all(L.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<RatFunc> vals;
  for (const auto& m1 : ring_monomials(L, degree, all)) {
    RatFunc a = t.embed(monomial_value(L, m1), 0);
    for (const auto& e : symbol_monomials(H.unit, degree)) vals.push_back(a * product(gens, e, t.T.one()));
  }
  MuResult res;
  res.sources = vals.size();
  res.injective = linear_relations(vals, L.p).empty();
  std::vector<int> tall(t.T.size());
  std::iota(tall.begin(), tall.end(), 0);
  for (const auto& e : ring_monomials(t.T, degree, tall)) {
    ++res.targets;
    RatFunc m = monomial_value(t.T, e);
    if (!span_coordinates(m, vals, L.p)) {
      res.spanning = false;
      if (res.witness.empty()) res.witness = m.to_string();
    }
  }
  return res;
}

std::string xname(std::size_t n, std::size_t i, std::size_t j) {
  return n < 10 ? "x" + std::to_string(i + 1) + std::to_string(j + 1)
                : "x" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}
std::string mname(std::size_t n, std::size_t i, std::size_t j) { return "m" + xname(n, i, j).substr(1); }

// k-linear relations among the entries of X, degree by degree, reduced modulo multiples of earlier ones.
std::vector<MPoly> entry_relations(const PVData& data, const SpacePtr& xsp) {
  const FieldDesc& L = data.field();
  const std::size_t n = data.X.rows(), nv = n * n;
  std::vector<RatFunc> ent;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ent.push_back(data.X(i, j));
  std::vector<MPoly> accepted;
  std::vector<RatFunc> span;
  for (int d = 1; d <= kRelationDegree; ++d) {
    auto mons = multi_indices(nv, d);
    std::reverse(mons.begin(), mons.end());
    std::vector<RatFunc> vals;
    for (const auto& e : mons) vals.push_back(product(ent, e, L.one()));
    for (const auto& r : linear_relations(vals, L.p)) {
      MPoly f(xsp, Scalar(0, L.p));
      for (std::size_t k = 0; k < mons.size(); ++k)
        if (!r[k].is_zero()) f.add_term(mons[k], r[k]);
      if (!span.empty() && span_coordinates(RatFunc(f), span, L.p)) continue;
      accepted.push_back(f);
      for (const auto& m : multi_indices(nv, kRelationDegree - f.total_degree()))
        span.push_back(RatFunc(f * MPoly::monomial(xsp, m, Scalar(1, L.p))));
    }
  }
  return accepted;
}

// Expression of each generator of L as a polynomial in the entries of X.
std::vector<std::optional<MPoly>> generator_expressions(const PVData& data, const SpacePtr& xsp) {
  const FieldDesc& L = data.field();
  const std::size_t n = data.X.rows(), nv = n * n;
  std::vector<RatFunc> ent;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ent.push_back(data.X(i, j));
  auto mons = multi_indices(nv, kRelationDegree);
  std::vector<RatFunc> vals;
  for (const auto& e : mons) vals.push_back(product(ent, e, L.one()));
  std::vector<std::optional<MPoly>> out;
  for (int v : L.generators()) {
    auto c = span_coordinates(L.var(v), vals, L.p);
    if (!c) {
      out.push_back(std::nullopt);
      continue;
    }
    MPoly f(xsp, Scalar(0, L.p));
    for (std::size_t k = 0; k < mons.size(); ++k)
      if (!(*c)[k].is_zero()) f.add_term(mons[k], (*c)[k]);
    out.push_back(std::move(f));
  }
  return out;
}

Poly<RatFunc> eval_entries(const MPoly& f, const std::vector<Poly<RatFunc>>& vals, const SpacePtr& sp,
                           const RatFunc& one) {
  Poly<RatFunc> acc(sp, zero_like(one));
  for (const auto& [e, c] : f.terms()) {
    RatFunc cc = one;
    cc *= c;
    Poly<RatFunc> t = Poly<RatFunc>::constant(sp, cc);
    for (std::size_t v = 0; v < e.size() && !t.is_zero(); ++v)
      if (e[v]) t *= vals[v].pow(e[v]);
    acc += t;
  }
  return acc;
}

std::string paren(const std::string& s) { return s.find(' ') != std::string::npos ? "(" + s + ")" : s; }

// sum r_g (x) a_g, grouping the L-coefficients up to scalars.
std::string tensor_string(const Poly<RatFunc>& f) {
  struct Group {
    RatFunc c;
    Poly<RatFunc> a;
  };
  std::map<std::string, Group> groups;
  const RatFunc zero = f.zero_coeff();
  for (const auto& [e, c] : f.terms()) {
    const auto& lt = *c.num().terms().rbegin();
    Scalar s = lt.second;
    RatFunc cn = c;
    cn *= s.inverse();
    std::string key = cn.to_string();
    auto it = groups.try_emplace(key, Group{cn, Poly<RatFunc>(f.space(), zero)}).first;
    RatFunc sc = one_like(zero);
    sc *= s;
    it->second.a.add_term(e, sc);
  }
  std::vector<const Group*> order;
  for (const auto& [k, g] : groups) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(), [](const Group* x, const Group* y) {
    return GrLex{}(x->a.terms().begin()->first, y->a.terms().begin()->first);
  });
  std::string out;
  for (const Group* g : order) {
    std::string a = to_string(g->a, true);
    bool neg = g->a.size() == 1 && a[0] == '-';
    if (neg) a = a.substr(1);
    std::string t = paren(g->c.to_string()) + " ⊗ " + paren(a);
    if (out.empty())
      out = neg ? "-" + t : t;
    else
      out += (neg ? " - " : " + ") + t;
  }
  return out.empty() ? "0" : out;
}

std::string matrix_string(const Matrix<Poly<RatFunc>>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + to_string(m(i, j), true);
    s += "]";
  }
  return s + "]";
}

}  // namespace

std::string GaloisPoints::shape() const { return matrix_string(M); }

PVData make_pv(const ActionPtr& action, const std::vector<std::vector<std::string>>& X, std::vector<std::string> u) {
  const FieldDesc& L = action->field;
  if (!L.base.empty()) throw math_error("pv", "the base field must be the constant field (no base variables)");
  std::vector<std::vector<RatFunc>> rows;
  for (const auto& r : X) {
    if (r.size() != X.size()) throw schema_error("fundamental matrix must be square");
    rows.emplace_back();
    for (const auto& s : r) rows.back().push_back(L.parse(s));
  }
  if (rows.empty()) throw schema_error("fundamental matrix is empty");
  if (u.empty())
    for (int v : L.generators()) u.push_back(L.vars->name(v));
  return PVData{action, Matrix<RatFunc>(std::move(rows)), std::move(u)};
}

PVData trivial_pv(std::uint32_t p) {
  FieldDesc f = FieldDesc::make({}, {}, p);
  return PVData{trivial_action(f), Matrix<RatFunc>({{f.one()}}), {}};
}

HopfPresentation compute_H(const PVData& data, int degree) {
  require_k(data);
  const FieldDesc& L = data.field();
  const std::uint32_t p = L.p;
  Tensor t2 = make_tensor(L, 2), t3 = make_tensor(L, 3);
  ActionPtr act = tensor_action(*data.action, t2);
  HopfPresentation H;
  H.degree = degree;
  H.tensor = t2.T.vars;

  struct Cand {
    int deg;
    Exp key;
    RatFunc f;
  };
  std::vector<Cand> cands;
  for (const auto& c : constants(*act, degree)) {
    auto terms = laurent_terms(c);
    int deg = 0;
    Exp key;
    Scalar lead;
    for (const auto& [e, s] : terms) {
      Exp k = e;
      std::reverse(k.begin(), k.end());
      int d = abs_degree(e);
      if (d > deg || (d == deg && (key.empty() || k > key))) {
        deg = d;
        key = k;
        lead = s;
      }
    }
    RatFunc f = c;
    f *= lead.inverse();
    cands.push_back({deg, key, f});
  }
  std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    return a.deg != b.deg ? a.deg < b.deg : a.key > b.key;
  });
  std::vector<int> gdeg;
  auto hmon_values = [&](int bound) {
    std::vector<RatFunc> vals;
    for (const auto& e : symbol_monomials(H.unit, bound)) {
      int w = 0;
      for (std::size_t i = 0; i < e.size(); ++i) w += std::abs(e[i]) * gdeg[i];
      if (w <= bound) vals.push_back(product(H.gens, e, t2.T.one()));
    }
    return vals;
  };
  for (const auto& c : cands) {
    if (c.deg == 0) continue;
    if (span_coordinates(c.f, hmon_values(degree), p)) continue;
    H.gens.push_back(c.f);
    H.unit.push_back(is_laurent_unit(c.f, t2.T.laurent));
    gdeg.push_back(c.deg);
  }
  const std::size_t r = H.gens.size();
  std::vector<std::string> names;
  if (r == 1)
    names = {"h"};
  else
    for (std::size_t i = 0; i < r; ++i) names.push_back("h" + std::to_string(i + 1));
  H.hsp = make_space(names);
  H.hhsp = make_space(copy_names(names, 2));
  SpacePtr h3 = make_space(copy_names(names, 3));
  std::vector<std::string> lnames;
  for (std::size_t v = 0; v < L.size(); ++v) lnames.push_back(L.vars->name(static_cast<int>(v)));
  for (const auto& g : H.gens) H.elements.push_back(laurent_string(g, lnames, L.size(), 2, true));
  if (r == 0) {
    H.note = "no non-constant generator within degree " + std::to_string(degree);
    return H;
  }

  const RatFunc one_t2 = t2.T.one(), one_t3 = t3.T.one();
  const RatFunc zero_h = RatFunc(H.hsp, p), one_h = RatFunc::constant(H.hsp, Scalar(1, p));
  const RatFunc one_hh = RatFunc::constant(H.hhsp, Scalar(1, p));
  const int count = std::max(2, degree);

  // Relations among the generators.
  {
    auto mons = symbol_monomials(H.unit, degree);
    std::vector<RatFunc> vals;
    for (const auto& e : mons) vals.push_back(product(H.gens, e, one_t2));
    for (const auto& rel : linear_relations(vals, p)) {
      RatFunc f = zero_h;
      for (std::size_t k = 0; k < mons.size(); ++k)
        if (!rel[k].is_zero()) f += laurent_monomial(H.hsp, mons[k], rel[k]);
      H.relations.push_back(laurent_string(f, names, r, 1, false) + " = 0");
    }
  }

  // Delta: g(x@1, x@3) in the span of g_i(x@1, x@2) g_j(x@2, x@3).
  std::vector<RatFunc> g12, g23;
  for (const auto& g : H.gens) {
    g12.push_back(t3.move(g, t2, {0, 1}));
    g23.push_back(t3.move(g, t2, {1, 2}));
  }
  std::vector<bool> unit2 = H.unit;
  unit2.insert(unit2.end(), H.unit.begin(), H.unit.end());
  auto hh_mons = symbol_monomials(unit2, count);
  std::vector<RatFunc> hh_vals;
  for (const auto& e : hh_mons) {
    Exp a(e.begin(), e.begin() + static_cast<long>(r)), b(e.begin() + static_cast<long>(r), e.end());
    hh_vals.push_back(product(g12, a, one_t3) * product(g23, b, one_t3));
  }
  auto h_mons = symbol_monomials(H.unit, count);
  std::vector<RatFunc> h_vals;
  for (const auto& e : h_mons) h_vals.push_back(product(H.gens, e, one_t2));
  bool structure = true;
  PVCheck st{"structure maps", true, ""};
  for (std::size_t i = 0; i < r; ++i) {
    const RatFunc& g = H.gens[i];
    RatFunc d13 = t3.move(g, t2, {0, 2});
    auto c = span_coordinates(d13, hh_vals, p);
    RatFunc delta(H.hhsp, p);
    if (c) {
      for (std::size_t k = 0; k < hh_mons.size(); ++k)
        if (!(*c)[k].is_zero()) delta += laurent_monomial(H.hhsp, hh_mons[k], (*c)[k]);
    } else {
      structure = false;
      st.detail = "Delta(" + names[i] + ") outside H⊗H within " + std::to_string(count) + " factors";
    }
    H.delta.push_back(delta);
    H.comul.push_back(c ? laurent_string(delta, names, r, 2, false) : "?");

    std::vector<RatFunc> diag;
    for (int c2 = 0; c2 < 2; ++c2)
      for (std::size_t v = 0; v < L.size(); ++v) diag.push_back(L.var(static_cast<int>(v)));
    RatFunc e = L.size() ? subst(g, diag) : L.constant(g.scalar());
    if (!e.is_constant()) {
      structure = false;
      st.detail = "epsilon(" + names[i] + ") = " + e.to_string() + " is not a constant";
      H.eps.push_back(Scalar(0, p));
    } else {
      H.eps.push_back(e.is_zero() ? Scalar(0, p) : e.scalar());
    }
    H.counit.push_back(H.eps.back().to_string());

    RatFunc flip = t2.move(g, t2, {1, 0});
    auto s = span_coordinates(flip, h_vals, p);
    RatFunc S = zero_h;
    if (s) {
      for (std::size_t k = 0; k < h_mons.size(); ++k)
        if (!(*s)[k].is_zero()) S += laurent_monomial(H.hsp, h_mons[k], (*s)[k]);
    } else {
      structure = false;
      st.detail = "S(" + names[i] + ") outside H within " + std::to_string(count) + " factors";
    }
    H.antipode.push_back(S);
    H.antipodes.push_back(s ? laurent_string(S, names, r, 1, false) : "?");

    std::string kind;
    RatFunc L1 = RatFunc::variable(H.hhsp, static_cast<int>(i), p);
    RatFunc R1 = RatFunc::variable(H.hhsp, static_cast<int>(r + i), p);
    if (delta == L1 + R1) kind = "primitive";
    if (delta == L1 * R1) kind = "group-like";
    H.kinds.push_back(kind);
  }
  st.pass = structure;
  if (structure) st.detail = "Delta, epsilon and S found for " + std::to_string(r) + " generator(s)";
  H.checks.push_back(st);
  if (!structure) return H;

  std::vector<RatFunc> hvars, epsv, S = H.antipode;
  for (std::size_t i = 0; i < r; ++i) {
    hvars.push_back(RatFunc::variable(H.hsp, static_cast<int>(i), p));
    epsv.push_back(RatFunc::constant(H.hsp, H.eps[i]));
  }
  auto join = [](std::vector<RatFunc> a, const std::vector<RatFunc>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  PVCheck cu{"counit", true, ""}, co{"coassociativity", true, ""}, an{"antipode", true, ""},
      cs{"constants", true, ""};
  std::vector<RatFunc> s1, s2, s3;
  for (std::size_t i = 0; i < r; ++i) {
    s1.push_back(RatFunc::variable(h3, static_cast<int>(i), p));
    s2.push_back(RatFunc::variable(h3, static_cast<int>(r + i), p));
    s3.push_back(RatFunc::variable(h3, static_cast<int>(2 * r + i), p));
  }
  std::vector<RatFunc> d12, d23;
  for (std::size_t j = 0; j < r; ++j) {
    d12.push_back(subst(H.delta[j], join(s1, s2)));
    d23.push_back(subst(H.delta[j], join(s2, s3)));
  }
  const auto tests = constant_tests(*act, std::max(act->t_horizon, degree));
  for (std::size_t i = 0; i < r; ++i) {
    if (subst(H.delta[i], join(epsv, hvars)) != hvars[i] || subst(H.delta[i], join(hvars, epsv)) != hvars[i]) {
      cu.pass = false;
      cu.detail = names[i];
    }
    if (subst(H.delta[i], join(d12, s3)) != subst(H.delta[i], join(s1, d23))) {
      co.pass = false;
      co.detail = names[i];
    }
    RatFunc unit = RatFunc::constant(H.hsp, H.eps[i]);
    if (subst(H.delta[i], join(S, hvars)) != unit || subst(H.delta[i], join(hvars, S)) != unit) {
      an.pass = false;
      an.detail = names[i];
    }
    for (const auto& d : tests) {
      RatFunc lhs = act->apply(d, H.gens[i]);
      RatFunc rhs = H.gens[i];
      rhs *= act->counit(d);
      if (lhs != rhs) {
        cs.pass = false;
        cs.detail = names[i] + " under " + act->delem_string(d);
        break;
      }
    }
  }
  for (PVCheck* c : {&cu, &co, &an, &cs})
    if (c->pass) c->detail = "exact on " + std::to_string(r) + " generator(s)";
  cs.detail += cs.pass ? " against " + std::to_string(tests.size()) + " D-elements" : "";
  H.checks.insert(H.checks.end(), {cu, co, an, cs});
  (void)one_h;
  (void)one_hh;
  return H;
}

PVCheck mu_check(const PVData& data, const HopfPresentation& H, int degree) {
  MuResult m = mu_images(data, H, degree);
  PVCheck c{"mu", m.injective && m.spanning, ""};
  c.detail = std::to_string(m.sources) + " images of R⊗H " + (m.injective ? "independent" : "dependent") + ", " +
             std::to_string(m.targets) + " monomials of R⊗R " + (m.spanning ? "spanned" : "not spanned");
  if (!m.witness.empty()) c.detail += " (" + m.witness + ")";
  return c;
}

PVReport pv_verify(const PVData& data, int degree) {
  PVReport rep;
  auto add = [&](PVCheck c) {
    rep.pass = rep.pass && c.pass;
    rep.checks.push_back(std::move(c));
  };
  const FieldDesc& L = data.field();
  const ActionSpec& a = *data.action;
  if (!L.base.empty()) {
    add({"field", false, "the base field must be the constant field"});
    return rep;
  }

  {
    PVCheck c{"constants", true, ""};
    std::string list;
    for (const auto& x : constants(a, degree)) {
      if (!x.is_constant()) c.pass = false;
      list += (list.empty() ? "" : ", ") + x.to_string();
    }
    c.detail = "constants of L to degree " + std::to_string(degree) + ": " + (list.empty() ? "none" : list);
    add(c);
  }

  {
    PVCheck c{"ring", true, ""};
    const std::size_t n = data.X.rows();
    try {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (const auto& [e, s] : laurent_terms(data.X(i, j)))
            if (!only_on(e, L.laurent)) throw math_error("ring", data.X(i, j).to_string() + " is not in R");
      RatFunc det = determinant(data.X);
      if (!is_laurent_unit(det, L.laurent)) throw math_error("ring", "det X = " + det.to_string() + " is not a unit of R");
      SpacePtr xsp = make_space([&] {
        std::vector<std::string> nm;
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) nm.push_back(xname(n, i, j));
        return nm;
      }());
      auto ex = generator_expressions(data, xsp);
      std::string list;
      for (std::size_t v = 0; v < ex.size(); ++v) {
        const std::string y = L.vars->name(L.generators()[v]);
        if (!ex[v]) throw math_error("ring", y + " is not a polynomial in the entries of X");
        list += (list.empty() ? "" : ", ") + y + " = " + to_string(*ex[v], true);
      }
      c.detail = "X over R, det X a unit" + (list.empty() ? std::string() : "; " + list);
    } catch (const math_error& e) {
      c.pass = false;
      c.detail = e.what();
    }
    add(c);
  }

  {
    PVCheck c{"log-derivative", true, ""};
    Matrix<RatFunc> Xi = inverse(data.X);
    const int tdeg = a.der == DerKind::None ? 0 : std::min(degree, a.t_horizon);
    const int h = a.monoid == MonoidKind::None ? 0 : std::min(2, a.monoid_horizon);
    std::size_t tested = 0;
    for (const auto& d : a.basis(tdeg, h)) {
      if (total_degree(d.k) == 0 && a.key_len(d.word) == 0) continue;
      Matrix<RatFunc> dX = data.X.map([&](const RatFunc& x) { return a.apply(d, x); });
      Matrix<RatFunc> q = dX * Xi;
      ++tested;
      bool ok = true;
      for (std::size_t i = 0; i < q.rows(); ++i)
        for (std::size_t j = 0; j < q.cols(); ++j) ok = ok && L.in_base(q(i, j));
      const std::string s = a.delem_string(d) + "(X)X^-1 = " + to_string(q);
      if (!ok) {
        c.pass = false;
        c.detail = s + " is not over K";
        break;
      }
      if (tested <= 4) c.detail += (c.detail.empty() ? "" : ", ") + s;
    }
    if (c.pass) c.detail += "; " + std::to_string(tested) + " D-elements give matrices over K";
    add(c);
  }

  {
    HopfPresentation H = compute_H(data, degree);
    MuResult m = mu_images(data, H, degree);
    add({"principal", m.spanning,
         std::to_string(m.targets) + " monomials of R⊗R in R·H" + (m.witness.empty() ? "" : " except " + m.witness)});
  }

  {
    PVCheck c{"injective", true, "no monoid generators"};
    if (!a.gens.empty()) {
      std::vector<int> all(L.size());
      std::iota(all.begin(), all.end(), 0);
      auto mons = ring_monomials(L, degree, all);
      for (std::size_t g = 0; g < a.gens.size(); ++g) {
        std::vector<RatFunc> vals;
        for (const auto& e : mons) vals.push_back(a.apply_gen(static_cast<int>(g), monomial_value(L, e)));
        if (!linear_relations(vals, L.p).empty()) {
          c.pass = false;
          c.detail = a.gens[g].name + " is not injective to degree " + std::to_string(degree);
        }
      }
      if (c.pass) c.detail = "monoid generators injective to degree " + std::to_string(degree);
    }
    add(c);
  }
  return rep;
}

GaloisPoints galois_points(const PVData& data, int order, bool formal) {
  require_k(data);
  const FieldDesc& L = data.field();
  const std::uint32_t p = L.p;
  const std::size_t n = data.X.rows(), nv = n * n;
  const RatFunc zero = L.zero(), one = L.one();
  GaloisPoints G;
  G.formal = formal;
  G.order = order;
  std::vector<std::string> xn, mn;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      xn.push_back(xname(n, i, j));
      mn.push_back(mname(n, i, j));
    }
  SpacePtr xsp = make_space(xn);
  auto rels = entry_relations(data, xsp);
  for (const auto& r : rels) G.relations.push_back(to_string(r, true));

  // Equations in the entries m_ij of M (M = 1 + m when formal).
  std::vector<Constraint> cons;
  std::vector<int> all(nv);
  std::iota(all.begin(), all.end(), 0);
  if (formal) cons.push_back({all, std::max(0, order - 1)});
  SpacePtr U = make_space(mn, cons);
  auto residuals = [&](const Matrix<Poly<RatFunc>>& M, const SpacePtr& sp) {
    Matrix<Poly<RatFunc>> Xc = data.X.map([&](const RatFunc& x) { return Poly<RatFunc>::constant(sp, x); });
    Matrix<Poly<RatFunc>> XM = Xc * M;
    std::vector<Poly<RatFunc>> ent;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) ent.push_back(XM(i, j));
    std::vector<Poly<RatFunc>> out;
    for (const auto& r : rels) out.push_back(eval_entries(r, ent, sp, one));
    return std::make_pair(out, ent);
  };
  Matrix<Poly<RatFunc>> Mu(n, n, Poly<RatFunc>(U, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mu(i, j) = Poly<RatFunc>::variable(U, static_cast<int>(i * n + j), one);
      if (formal && i == j) Mu(i, j) += Poly<RatFunc>::constant(U, one);
    }
  auto [res, ent0] = residuals(Mu, U);
  (void)ent0;

  // Linear solve: free columns become parameters.
  std::vector<std::size_t> free;
  std::vector<std::vector<RatFunc>> value(nv);  // m_u = value[u][0] + sum_f value[u][1 + f] m_f
  if (formal && order <= 1) {
    for (std::size_t u = 0; u < nv; ++u) value[u] = {zero};
  } else if (formal) {
    Matrix<RatFunc> E(res.size(), nv, zero);
    for (std::size_t r = 0; r < res.size(); ++r)
      for (std::size_t u = 0; u < nv; ++u) {
        Exp e(nv, 0);
        e[u] = 1;
        E(r, u) = res[r].coeff(e);
      }
    auto piv = rref(E);
    std::vector<bool> is_piv(nv, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t u = 0; u < nv; ++u)
      if (!is_piv[u]) free.push_back(u);
    for (std::size_t u = 0; u < nv; ++u) {
      value[u].assign(1 + free.size(), zero);
      if (!is_piv[u]) value[u][1 + (std::find(free.begin(), free.end(), u) - free.begin())] = one;
    }
    for (std::size_t k = 0; k < piv.size(); ++k)
      for (std::size_t f = 0; f < free.size(); ++f) value[piv[k]][1 + f] = -E(k, free[f]);
  } else {
    std::vector<std::vector<Scalar>> rows;
    for (const auto& r : res) {
      if (r.total_degree() > 1) {
        G.obstruction = "non-linear relations among the entries of X over a reduced test algebra";
        return G;
      }
      std::vector<RatFunc> vals{r.constant_term()};
      for (std::size_t u = 0; u < nv; ++u) {
        Exp e(nv, 0);
        e[u] = 1;
        vals.push_back(r.coeff(e));
      }
      for (auto& row : coefficient_rows(vals, p)) rows.push_back(std::move(row));
    }
    Matrix<Scalar> A(rows.size(), nv + 1, Scalar(0, p));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t u = 0; u < nv; ++u) A(r, u) = rows[r][1 + u];
      A(r, nv) = -rows[r][0];
    }
    auto piv = rref(A);
    if (!piv.empty() && piv.back() == nv) {
      G.obstruction = "no points";
      return G;
    }
    std::vector<bool> is_piv(nv, false);
    for (auto c : piv) is_piv[c] = true;
    for (std::size_t u = 0; u < nv; ++u)
      if (!is_piv[u]) free.push_back(u);
    for (std::size_t u = 0; u < nv; ++u) {
      value[u].assign(1 + free.size(), zero);
      if (!is_piv[u]) value[u][1 + (std::find(free.begin(), free.end(), u) - free.begin())] = one;
    }
    for (std::size_t k = 0; k < piv.size(); ++k) {
      value[piv[k]][0] = L.constant(A(k, nv));
      for (std::size_t f = 0; f < free.size(); ++f) value[piv[k]][1 + f] = L.constant(-A(k, free[f]));
    }
  }

  for (auto f : free) G.params.push_back(mn[f]);
  std::vector<Constraint> fcons;
  std::vector<int> fall(free.size());
  std::iota(fall.begin(), fall.end(), 0);
  if (formal) fcons.push_back({fall, std::max(0, order - 1)});
  G.sp = make_space(G.params, fcons);
  G.M = Matrix<Poly<RatFunc>>(n, n, Poly<RatFunc>(G.sp, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = value[i * n + j];
      Poly<RatFunc> x = Poly<RatFunc>::constant(G.sp, (formal && i == j) ? one + v[0] : v[0]);
      for (std::size_t f = 0; f < free.size(); ++f)
        if (!v[1 + f].is_zero()) x += Poly<RatFunc>::variable(G.sp, static_cast<int>(f), one) * Poly<RatFunc>::constant(G.sp, v[1 + f]);
      G.M(i, j) = std::move(x);
    }
  auto [chk, ent] = residuals(G.M, G.sp);
  for (const auto& r : chk)
    if (!r.is_zero()) {
      G.obstruction = "relations of higher degree are not solved by the linear layer";
      break;
    }
  if (!formal) G.condition = "det(M) = " + to_string(determinant(G.M), true) + " != 0";

  auto ex = generator_expressions(data, xsp);
  for (std::size_t v = 0; v < ex.size(); ++v) {
    const std::string y = L.vars->name(L.generators()[v]);
    if (!ex[v]) continue;
    G.automorphism.push_back("sigma(" + y + " ⊗ 1) = " + tensor_string(eval_entries(*ex[v], ent, G.sp, one)));
  }
  return G;
}

int lie_dim(const PVData& data) {
  GaloisPoints G = galois_points(data, 2, true);
  if (!G.obstruction.empty()) throw math_error("lie-dim", G.obstruction);
  return static_cast<int>(G.params.size());
}

CompareReport compare(const PVData& data, int order, int horizon, int diff_order) {
  require_k(data);
  const FieldDesc& L = data.field();
  const std::uint32_t p = L.p;
  const std::size_t n = data.X.rows();
  const RatFunc zero = L.zero(), one = L.one();
  CompareReport rep;
  GaloisPoints G = galois_points(data, order, true);
  rep.galois_shape = G.shape();
  if (L.generators().empty()) {
    rep.umemura_tag = "trivial";
    rep.umemura_shape = "w";
    rep.bijection = G.params.empty();
    rep.homomorphism = true;
    rep.note = "both groups are trivial";
    return rep;
  }

  // K-point: each generator sent to an integer of height <= kPointHeight.
  std::vector<int> gens = L.generators();
  std::vector<int> heights{0};
  for (int k = 1; k <= kPointHeight; ++k) {
    heights.push_back(k);
    heights.push_back(-k);
  }
  std::optional<Matrix<RatFunc>> B;
  std::vector<std::size_t> idx(gens.size(), 0);
  while (!B) {
    bool ok = true;
    std::vector<RatFunc> im;
    for (std::size_t v = 0; v < L.size(); ++v) im.push_back(L.var(static_cast<int>(v)));
    for (std::size_t g = 0; g < gens.size(); ++g) {
      int val = heights[idx[g]];
      if (val == 0 && std::find(L.laurent.begin(), L.laurent.end(), gens[g]) != L.laurent.end()) ok = false;
      im[gens[g]] = L.constant(Scalar(val, p));
    }
    std::vector<const RatFunc*> ptrs;
    for (const auto& x : im) ptrs.push_back(&x);
    if (ok) {
      Matrix<RatFunc> b(n, n, zero);
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
          RatFunc den = eval_mpoly(data.X(i, j).den(), ptrs, L.vars);
          if (den.is_zero()) ok = false;
          else b(i, j) = eval_mpoly(data.X(i, j).num(), ptrs, L.vars) / den;
        }
      if (ok && !determinant(b).is_zero()) {
        B = b;
        for (std::size_t g = 0; g < gens.size(); ++g)
          rep.kpoint += (g ? ", " : "") + L.vars->name(gens[g]) + " = " + std::to_string(heights[idx[g]]);
        break;
      }
    }
    std::size_t g = 0;
    while (g < gens.size() && ++idx[g] == heights.size()) idx[g++] = 0;
    if (g == gens.size()) break;
  }
  if (!B) {
    rep.note = "no K-point of height <= " + std::to_string(kPointHeight) +
               "; a proper étale extension K' would be required";
    return rep;
  }

  ExtensionDesc ext = make_extension(data.action, data.u);
  UmemuraProblem pb = make_umemura_problem(ext, horizon, diff_order, 1, order);
  UmemuraPoints pts = umemura_points(pb);
  rep.umemura_shape = pts.zero_set.shape();
  rep.umemura_tag = pts.tag.tag;
  if (!pts.zero_set.consistent || !pts.zero_set.obstruction.empty()) {
    rep.note = "no Umemura template";
    return rep;
  }
  const HullPresentation& H = pb.hull;
  const int N = horizon;
  const SpacePtr W = H.theta_u->t_space(N);
  std::vector<std::map<Exp, HomElement>> closure;
  std::vector<Poly<RatFunc>> thetaX;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      closure.push_back(theta_closure(*H.theta_u, taylor_expand(data.X(i, j), H.ctx), N));
      thetaX.push_back(H.theta_u->theta_series(data.X(i, j), W));
    }

  // M = B^-1 theta_u(X) theta_u(rho X)^-1 (theta_u(rho X) at w = Phi) theta_u(X)^-1 B.
  std::string failure;
  auto matrix_of = [&](const InfTransform& phi) -> std::optional<Matrix<Poly<RatFunc>>> {
    const GammaSpace& g = *phi.g;
    std::vector<int> ext_all(g.sp->size());
    std::iota(ext_all.begin(), ext_all.end(), 0);
    HomCtxPtr C = make_hom_context(ext.action, H.ctx->horizon, H.ctx->h, g.sp->names(),
                                   {Constraint{ext_all, g.horizon}, Constraint{g.epsvars, g.A.order - 1}});
    std::vector<Poly<RatFunc>> Phi, w;
    for (std::size_t i = 0; i < g.n; ++i) {
      Phi.push_back(phi.phi[i].rehome(C->sp));
      w.push_back(Poly<RatFunc>::variable(C->sp, C->sp->require(g.sp->name(g.wvars[i])), one));
    }
    auto pw = [&](const std::vector<Poly<RatFunc>>& base, const Exp& k) {
      Poly<RatFunc> r = Poly<RatFunc>::constant(C->sp, one);
      for (std::size_t i = 0; i < k.size(); ++i)
        if (k[i]) r *= base[i].pow(k[i]);
      return r;
    };
    const Poly<RatFunc> z(C->sp, zero);
    Matrix<Poly<RatFunc>> Bc = B->map([&](const RatFunc& x) { return Poly<RatFunc>::constant(C->sp, x); });
    Matrix<Poly<RatFunc>> Bi = inverse(*B).map([&](const RatFunc& x) { return Poly<RatFunc>::constant(C->sp, x); });
    Matrix<Poly<RatFunc>> T(n, n, z);
    for (std::size_t e = 0; e < n * n; ++e) T(e / n, e % n) = thetaX[e].rehome(C->sp);
    Matrix<Poly<RatFunc>> Ti = inverse(T);
    std::optional<Matrix<Poly<RatFunc>>> out;
    for (std::size_t q = 0; q < C->keys.size(); ++q) {
      Matrix<Poly<RatFunc>> A1(n, n, z), A2(n, n, z);
      for (std::size_t e = 0; e < n * n; ++e)
        for (const auto& [k, x] : closure[e]) {
          Poly<RatFunc> v = x.values()[q].rehome(C->sp);
          A1(e / n, e % n) += v * pw(w, k);
          A2(e / n, e % n) += v * pw(Phi, k);
        }
      Matrix<Poly<RatFunc>> M = Bi * T * inverse(A1) * A2 * Ti * Bc;
      Matrix<Poly<RatFunc>> Mg(n, n, Poly<RatFunc>(g.sp, zero));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          for (const auto& [e, c] : M(i, j).terms()) {
            bool eps_only = true;
            for (std::size_t v = 0; v < e.size(); ++v) {
              if (!e[v]) continue;
              int gv = g.sp->index(C->sp->name(static_cast<int>(v)));
              if (gv < 0 || std::find(g.epsvars.begin(), g.epsvars.end(), gv) == g.epsvars.end()) eps_only = false;
            }
            if (!eps_only) {
              failure = "M(Phi) depends on t or w";
              return std::nullopt;
            }
          }
          Mg(i, j) = M(i, j).rehome(g.sp);
        }
      if (out && !(*out == Mg)) {
        failure = "M(Phi) differs between monoid keys";
        return std::nullopt;
      }
      out = std::move(Mg);
    }
    return out;
  };

  const InfTransform& Phi = pts.zero_set.general;
  const GammaSpace& g = *Phi.g;
  auto MPhi = matrix_of(Phi);
  if (!MPhi) {
    rep.note = failure;
    return rep;
  }
  rep.matrix = matrix_string(*MPhi);

  // Match M(Phi(a)) with the Galois template M(m): m_j = f_j(a).
  const std::size_t km = G.params.size(), ka = pts.zero_set.params.size();
  std::vector<Matrix<RatFunc>> Tj;
  Matrix<RatFunc> T0(n, n, zero);
  bool linear = true;
  for (std::size_t j = 0; j < km; ++j) Tj.emplace_back(n, n, zero);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [e, x] : G.M(i, c).terms()) {
        int d = total_degree(e);
        if (d == 0) T0(i, c) = x;
        else if (d == 1) Tj[std::find(e.begin(), e.end(), 1) - e.begin()](i, c) = x;
        else linear = false;
      }
  std::set<Exp> mons;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < n; ++c)
      for (const auto& [e, x] : (*MPhi)(i, c).terms()) mons.insert(e);
  std::vector<Poly<RatFunc>> f(km, Poly<RatFunc>(g.sp, zero));
  bool solved = linear;
  for (const auto& mu : mons) {
    if (!solved) break;
    Matrix<RatFunc> A(n * n, km, zero);
    std::vector<RatFunc> b(n * n, zero);
    for (std::size_t e = 0; e < n * n; ++e) {
      b[e] = (*MPhi)(e / n, e % n).coeff(mu);
      if (total_degree(mu) == 0) b[e] -= T0(e / n, e % n);
      for (std::size_t j = 0; j < km; ++j) A(e, j) = Tj[j](e / n, e % n);
    }
    auto x = km ? solve(A, b, zero) : std::optional<std::vector<RatFunc>>(std::vector<RatFunc>{});
    if (!x) {
      solved = false;
      break;
    }
    if (!km)
      for (const auto& v : b) solved = solved && v.is_zero();
    for (std::size_t j = 0; j < km; ++j)
      if (!(*x)[j].is_zero()) f[j].add_term(mu, (*x)[j]);
  }
  bool verified = false;
  if (solved) {
    std::vector<const Poly<RatFunc>*> ptrs;
    for (const auto& x : f) ptrs.push_back(&x);
    verified = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c)
        verified = verified && substitute(G.M(i, c), g.sp, ptrs) == (*MPhi)(i, c);
    for (std::size_t j = 0; j < km; ++j) rep.map.push_back(G.params[j] + " = " + to_string(f[j], true));
  }
  if (verified && km == ka) {
    Matrix<RatFunc> J(km, ka, zero);
    for (std::size_t j = 0; j < km; ++j)
      for (std::size_t i = 0; i < ka; ++i) {
        Exp e(g.sp->size(), 0);
        e[g.epsvars[i]] = 1;
        J(j, i) = f[j].coeff(e);
      }
    rep.bijection = km == 0 || rank(J) == km;
  }
  if (!verified) rep.note = "M(Phi) is not in the Galois template";

  // Homomorphism on two symbolic points.
  if (rep.bijection) {
    std::vector<std::string> names = pts.zero_set.params;
    for (const auto& a : pts.zero_set.params) names.push_back(a + "'");
    auto G2 = make_gamma(NilAlgebra{L, names, std::max(order, 3)}, g.n, g.horizon);
    auto embed = [&](bool second) {
      std::vector<Poly<RatFunc>> imgs;
      for (std::size_t j = 0; j < ka; ++j)
        imgs.push_back(Poly<RatFunc>::variable(G2->sp, G2->epsvars[second ? ka + j : j], one));
      for (int wv : G2->wvars) imgs.push_back(Poly<RatFunc>::variable(G2->sp, wv, one));
      std::vector<const Poly<RatFunc>*> ptrs;
      for (const auto& x : imgs) ptrs.push_back(&x);
      InfTransform t{G2, {}};
      for (const auto& c : Phi.phi) t.phi.push_back(substitute(c, G2->sp, ptrs));
      return t;
    };
    InfTransform Pa = embed(false), Pb = embed(true);
    auto Ma = matrix_of(Pa), Mb = matrix_of(Pb), Mc = matrix_of(compose(Pa, Pb));
    if (Ma && Mb && Mc) {
      if (*Mc == *Ma * *Mb) {
        rep.homomorphism = true;
        rep.law = "M(Phi o Psi) = M(Phi) M(Psi)";
      } else if (*Mc == *Mb * *Ma) {
        rep.homomorphism = true;
        rep.law = "M(Phi o Psi) = M(Psi) M(Phi)";
      }
    }
    if (!rep.homomorphism) rep.note = failure.empty() ? "M does not respect composition" : failure;
  }
  (void)p;
  return rep;
}

}  // namespace modalg
