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

#include "modalg/mpoly.hpp"

namespace modalg {

// Element of k(x_1..x_n), stored as num/den with gcd 1 and monic den.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(SpacePtr sp, std::uint32_t p) : num_(sp, Scalar(0, p)), den_(MPoly::constant(sp, Scalar(1, p))) {}
  explicit RatFunc(MPoly num);
  RatFunc(MPoly num, MPoly den);

  static RatFunc constant(const SpacePtr& sp, const Scalar& c) {
    return RatFunc(MPoly::constant(sp, c));
  }
  static RatFunc variable(const SpacePtr& sp, int v, std::uint32_t p) {
    return RatFunc(mpoly_var(sp, v, p));
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  const SpacePtr& space() const { return num_.space(); }
  std::uint32_t characteristic() const { return num_.zero_coeff().characteristic(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && !num_.is_zero() && num_.constant_term().is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  // Scalar value of a constant element.
  Scalar scalar() const;

  RatFunc inverse() const;
  RatFunc pow(long e) const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  RatFunc& operator/=(const RatFunc& o) { return *this *= o.inverse(); }
  RatFunc& operator*=(const Scalar& s);
  RatFunc operator-() const;

  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(RatFunc a, const RatFunc& b) { return a /= b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

 private:
  void normalize();

  MPoly num_{nullptr, Scalar()};
  MPoly den_{nullptr, Scalar()};
};

RatFunc derivative(const RatFunc& f, int v);

// Substitutes RatFunc images for the variables (null keeps the variable).
RatFunc substitute(const RatFunc& f, const std::vector<const RatFunc*>& images);
RatFunc eval_mpoly(const MPoly& f, const std::vector<const RatFunc*>& images, const SpacePtr& target);

inline bool is_zero(const RatFunc& f) { return f.is_zero(); }
inline bool is_unit(const RatFunc& f) { return !f.is_zero(); }
inline RatFunc zero_like(const RatFunc& f) { return RatFunc(f.space(), f.characteristic()); }
inline RatFunc one_like(const RatFunc& f) { return RatFunc::constant(f.space(), Scalar(1, f.characteristic())); }
inline RatFunc inverse(const RatFunc& f) { return f.inverse(); }
inline RatFunc from_scalar(const RatFunc& like, const Scalar& c) { return RatFunc::constant(like.space(), c); }
inline std::uint32_t characteristic(const RatFunc& f) { return f.characteristic(); }
inline std::string to_string(const RatFunc& f) { return f.to_string(); }

}  // namespace modalg
