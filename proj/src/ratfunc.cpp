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

#include "modalg/ratfunc.hpp"

namespace modalg {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.space(), one_like(num_.zero_coeff()))) {}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
  num_.check(den_);
  if (den_.is_zero()) throw division_by_zero("rational function with zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = MPoly::constant(num_.space(), one_like(num_.zero_coeff()));
    return;
  }
  if (!den_.is_constant()) {
    MPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = exact_div(num_, g);
      den_ = exact_div(den_, g);
    }
  }
  const Scalar& lc = den_.leading_coeff();
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
}

Scalar RatFunc::scalar() const {
  if (!is_constant()) throw context_mismatch("not a constant: " + to_string());
  return num_.constant_term();
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw division_by_zero();
  RatFunc r;
  r.num_ = den_;
  r.den_ = num_;
  r.normalize();
  return r;
}

RatFunc RatFunc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r;
  r.num_ = num_.pow(static_cast<int>(e));
  r.den_ = den_.pow(static_cast<int>(e));
  return r;
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    if (!den_.is_constant()) normalize();
    else if (num_.is_zero()) normalize();
    return *this;
  }
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ += o.num_;
    return *this;
  }
  MPoly g = gcd(den_, o.den_);
  MPoly a = exact_div(o.den_, g), b = exact_div(den_, g);
  num_ = num_ * a + o.num_ * b;
  den_ = den_ * a;
  normalize();
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = o;
  if (den_.is_constant() && o.den_.is_constant()) {
    num_ *= o.num_;
    return *this;
  }
  MPoly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  MPoly n1 = g1.is_constant() ? num_ : exact_div(num_, g1);
  MPoly d2 = g1.is_constant() ? o.den_ : exact_div(o.den_, g1);
  MPoly n2 = g2.is_constant() ? o.num_ : exact_div(o.num_, g2);
  MPoly d1 = g2.is_constant() ? den_ : exact_div(den_, g2);
  num_ = n1 * n2;
  den_ = d1 * d2;
  const Scalar& lc = den_.leading_coeff();
  if (!lc.is_one()) {
    Scalar inv = lc.inverse();
    num_ *= inv;
    den_ *= inv;
  }
  return *this;
}

RatFunc& RatFunc::operator*=(const Scalar& s) {
  num_ *= s;
  if (num_.is_zero()) normalize();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -num_;
  return r;
}

std::string RatFunc::to_string() const {
  std::string n = modalg::to_string(num_);
  if (den_.is_constant()) return n;
  std::string d = modalg::to_string(den_);
  if (compound(n) || num_.size() > 1) n = "(" + n + ")";
  if (compound(d) || den_.size() > 1 || d.find('*') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

RatFunc derivative(const RatFunc& f, int v) {
  MPoly dn = derivative(f.num(), v), dd = derivative(f.den(), v);
  if (dd.is_zero()) return RatFunc(dn, f.den());
  return RatFunc(dn * f.den() - f.num() * dd, f.den() * f.den());
}

RatFunc eval_mpoly(const MPoly& f, const std::vector<const RatFunc*>& images, const SpacePtr& target) {
  const auto p = f.zero_coeff().characteristic();
  // Clear denominators per variable to stay in polynomial arithmetic.
  const std::size_t n = f.space()->size();
  std::vector<int> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) deg[i] = f.degree(static_cast<int>(i));
  std::vector<std::vector<MPoly>> num_pow(n), den_pow(n);
  auto var_image = [&](std::size_t i) -> RatFunc {
    if (i < images.size() && images[i]) return *images[i];
    return RatFunc::variable(target, target->require(f.space()->name(i)), p);
  };
  MPoly common = MPoly::constant(target, Scalar(1, p));
  for (std::size_t i = 0; i < n; ++i) {
    if (!deg[i]) continue;
    RatFunc im = var_image(i);
    num_pow[i].push_back(MPoly::constant(target, Scalar(1, p)));
    den_pow[i].push_back(MPoly::constant(target, Scalar(1, p)));
    for (int k = 1; k <= deg[i]; ++k) {
      num_pow[i].push_back(num_pow[i].back() * im.num());
      den_pow[i].push_back(den_pow[i].back() * im.den());
    }
    common *= den_pow[i][deg[i]];
  }
  MPoly acc(target, Scalar(0, p));
  for (const auto& [e, c] : f.terms()) {
    MPoly t = MPoly::constant(target, c);
    for (std::size_t i = 0; i < n; ++i) {
      if (!deg[i]) continue;
      t *= num_pow[i][e[i]];
      if (e[i] < deg[i]) t *= den_pow[i][deg[i] - e[i]];
    }
    acc += t;
  }
  return RatFunc(acc, common);
}

RatFunc substitute(const RatFunc& f, const std::vector<const RatFunc*>& images) {
  SpacePtr target = f.space();
  for (const auto* im : images)
    if (im) {
      target = im->space();
      break;
    }
  return eval_mpoly(f.num(), images, target) / eval_mpoly(f.den(), images, target);
}

}  // namespace modalg
