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

#include "modalg/mpoly.hpp"

namespace modalg {

std::string monomial_string(const Space& sp, const Exp& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += sp.name(i);
    if (e[i] != 1) s += "^" + std::to_string(e[i]);
  }
  return s;
}

MPoly derivative(const MPoly& f, int v) {
  MPoly r(f.space(), f.zero_coeff());
  const auto p = f.zero_coeff().characteristic();
  for (const auto& [e, c] : f.terms()) {
    if (!e[v]) continue;
    Exp d = e;
    --d[v];
    r.add_term(std::move(d), c * Scalar(e[v], p));
  }
  return r;
}

bool is_monomial(const MPoly& f) { return f.size() == 1; }

std::optional<MPoly> try_div(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw division_by_zero();
  a.check(b);
  MPoly q(a.space(), a.zero_coeff()), r = a;
  const Exp& lb = b.leading_exp();
  const Scalar lci = b.leading_coeff().inverse();
  const std::size_t n = a.space()->size();
  while (!r.is_zero()) {
    const Exp& lr = r.leading_exp();
    Exp d(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = lr[i] - lb[i];
      if (d[i] < 0) return std::nullopt;
    }
    MPoly t = MPoly::monomial(a.space(), d, r.leading_coeff() * lci);
    q += t;
    r -= t * b;
  }
  return q;
}

MPoly exact_div(const MPoly& a, const MPoly& b) {
  auto q = try_div(a, b);
  if (!q) throw not_invertible("inexact polynomial division");
  return *q;
}

MPoly make_monic(const MPoly& f) {
  if (f.is_zero() || f.leading_coeff().is_one()) return f;
  return f * f.leading_coeff().inverse();
}

std::vector<MPoly> to_univariate(const MPoly& f, int v) {
  std::vector<MPoly> cs(f.degree(v) + 1, MPoly(f.space(), f.zero_coeff()));
  for (const auto& [e, c] : f.terms()) {
    Exp r = e;
    r[v] = 0;
    cs[e[v]].add_term(std::move(r), c);
  }
  return cs;
}

MPoly from_univariate(const std::vector<MPoly>& cs, int v, const SpacePtr& sp) {
  MPoly r(sp, cs.empty() ? Scalar() : cs[0].zero_coeff());
  for (std::size_t k = 0; k < cs.size(); ++k)
    for (const auto& [e, c] : cs[k].terms()) {
      Exp x = e;
      x[v] = static_cast<int>(k);
      r.add_term(std::move(x), c);
    }
  return r;
}

namespace {

int first_var(const MPoly& a, const MPoly& b) {
  int best = -1;
  for (const MPoly* f : {&a, &b})
    for (const auto& [e, c] : f->terms())
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] && (best < 0 || static_cast<int>(i) < best)) best = static_cast<int>(i);
  return best;
}

MPoly content(const std::vector<MPoly>& cs) {
  MPoly g(cs[0].space(), cs[0].zero_coeff());
  for (const auto& c : cs) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

std::vector<MPoly> trim(std::vector<MPoly> a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
  return a;
}

// Pseudo-remainder of a by b as polynomials in the split variable.
std::vector<MPoly> prem(std::vector<MPoly> a, const std::vector<MPoly>& b) {
  const MPoly& lb = b.back();
  while (a.size() >= b.size()) {
    MPoly la = a.back();
    std::size_t shift = a.size() - b.size();
    for (auto& c : a) c *= lb;
    for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] -= la * b[k];
    a = trim(std::move(a));
  }
  return a;
}

std::vector<MPoly> primitive(std::vector<MPoly> a) {
  MPoly c = content(a);
  if (!c.is_constant())
    for (auto& x : a) x = exact_div(x, c);
  // Keep rational coefficients small.
  Scalar lc = a.back().leading_coeff().inverse();
  for (auto& x : a) x *= lc;
  return a;
}

// Modular coprimality test: specializing all but one variable at random points
// mod a prime can only raise the degree of the gcd in that variable.
constexpr std::uint64_t kTestPrime = 2147483629ULL;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> reduce(const Scalar& c, std::uint64_t m) {
  if (c.characteristic()) return c.residue() % m;
  const std::uint64_t d = mpz_fdiv_ui(c.rational().get_den_mpz_t(), m);
  if (!d) return std::nullopt;
  return mpz_fdiv_ui(c.rational().get_num_mpz_t(), m) * powmod(d, m - 2, m) % m;
}

using UPoly = std::vector<std::uint64_t>;

void utrim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::size_t ugcd_degree(UPoly a, UPoly b, std::uint64_t m) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), m - 2, m);
    while (a.size() >= b.size()) {
      const std::uint64_t q = a.back() * inv % m;
      const std::size_t sh = a.size() - b.size();
      for (std::size_t k = 0; k < b.size(); ++k) a[k + sh] = (a[k + sh] + m - q * b[k] % m) % m;
      utrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

std::optional<UPoly> image(const MPoly& f, int v, const std::vector<std::uint64_t>& pt, std::uint64_t m) {
  UPoly r(f.degree(v) + 1, 0);
  for (const auto& [e, c] : f.terms()) {
    auto x = reduce(c, m);
    if (!x) return std::nullopt;
    std::uint64_t t = *x;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (static_cast<int>(i) != v && e[i]) t = t * powmod(pt[i], e[i], m) % m;
    r[e[v]] = (r[e[v]] + t) % m;
  }
  return r;
}

bool surely_coprime(const MPoly& a, const MPoly& b) {
  const std::uint32_t p = a.zero_coeff().characteristic();
  if (p && p < 1000) return false;
  const std::uint64_t m = p ? p : kTestPrime;
  const std::size_t n = a.space()->size();
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  auto next = [&] {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    return seed % (m - 2) + 2;
  };
  for (std::size_t v = 0; v < n; ++v) {
    const int da = a.degree(static_cast<int>(v)), db = b.degree(static_cast<int>(v));
    if (!da || !db) continue;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      std::vector<std::uint64_t> pt(n);
      for (auto& x : pt) x = next();
      auto ia = image(a, static_cast<int>(v), pt, m), ib = image(b, static_cast<int>(v), pt, m);
      if (!ia || !ib) return false;
      if (ia->back() == 0 || ib->back() == 0) continue;
      if (ugcd_degree(*ia, *ib, m) > 0) return false;
      ok = true;
    }
    if (!ok) return false;
  }
  return true;
}

MPoly monomial_gcd(const MPoly& m, const MPoly& f) {
  Exp e = m.leading_exp();
  for (const auto& [x, c] : f.terms())
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], x[i]);
  return MPoly::monomial(m.space(), e, one_like(m.zero_coeff()));
}

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  a.check(b);
  if (a.is_zero()) return make_monic(b);
  if (b.is_zero()) return make_monic(a);
  if (a.is_constant() || b.is_constant()) return MPoly::constant(a.space(), one_like(a.zero_coeff()));
  if (is_monomial(a) && is_monomial(b)) {
    Exp e = a.leading_exp();
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], b.leading_exp()[i]);
    return MPoly::monomial(a.space(), e, one_like(a.zero_coeff()));
  }
  if (is_monomial(a)) return monomial_gcd(a, b);
  if (is_monomial(b)) return monomial_gcd(b, a);
  {
    MPoly ma = monomial_gcd(MPoly::monomial(a.space(), a.leading_exp(), one_like(a.zero_coeff())), a);
    MPoly mb = monomial_gcd(MPoly::monomial(b.space(), b.leading_exp(), one_like(b.zero_coeff())), b);
    if (!ma.is_constant() || !mb.is_constant()) return make_monic(gcd(ma, mb) * gcd(exact_div(a, ma), exact_div(b, mb)));
  }
  if (surely_coprime(a, b)) return MPoly::constant(a.space(), one_like(a.zero_coeff()));
  if (auto q = try_div(a, b)) return make_monic(b);
  if (auto q = try_div(b, a)) return make_monic(a);
  const int v = first_var(a, b);
  auto ua = to_univariate(a, v), ub = to_univariate(b, v);
  MPoly ca = content(ua), cb = content(ub);
  MPoly c = gcd(ca, cb);
  for (auto& x : ua) x = exact_div(x, ca);
  for (auto& x : ub) x = exact_div(x, cb);
  if (ua.size() < ub.size()) std::swap(ua, ub);
  while (ub.size() > 1) {
    auto r = prem(ua, ub);
    ua = std::move(ub);
    if (r.empty()) {
      ub.clear();
      break;
    }
    ub = primitive(std::move(r));
  }
  MPoly g = c;
  if (!ub.empty() && ub.size() == 1) {
    // Remainder of degree zero: the parts are coprime in v.
  } else {
    g = c * from_univariate(primitive(ua), v, a.space());
  }
  return make_monic(g);
}

}  // namespace modalg
