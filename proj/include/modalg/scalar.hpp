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

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "modalg/errors.hpp"

namespace modalg {

bool is_prime(std::uint64_t p);

// Element of Q (p == 0) or of F_p.
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(long v, std::uint32_t p = 0);
  Scalar(const mpq_class& q, std::uint32_t p);

  static Scalar parse(std::string_view s, std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const { return p_ ? r_ == 0 : sgn(q_) == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }
  bool is_negative() const { return p_ == 0 && sgn(q_) < 0; }
  bool is_integer() const { return p_ != 0 || q_.get_den() == 1; }

  const mpq_class& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  Scalar inverse() const;
  Scalar pow(long e) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.p_ == b.p_ && (a.p_ ? a.r_ == b.r_ : a.q_ == b.q_);
  }

  // "p/q" for rationals, the residue in [0, p) otherwise.
  std::string to_string() const;

 private:
  void check(const Scalar& o) const;

  mpq_class q_;
  std::uint64_t r_ = 0;
  std::uint32_t p_ = 0;
};

// Validates a characteristic: 0 or a prime below 2^31.
void check_characteristic(long p);

// Binomial coefficient C(i, j) in characteristic p (Lucas for p > 0).
Scalar binom(long i, long j, std::uint32_t p);
Scalar binom(const std::vector<int>& i, const std::vector<int>& j, std::uint32_t p);
Scalar factorial(long n, std::uint32_t p);

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_unit(const Scalar& s) { return !s.is_zero(); }
inline Scalar zero_like(const Scalar& s) { return Scalar(0, s.characteristic()); }
inline Scalar one_like(const Scalar& s) { return Scalar(1, s.characteristic()); }
inline Scalar inverse(const Scalar& s) { return s.inverse(); }
inline Scalar from_scalar(const Scalar&, const Scalar& c) { return c; }
inline std::uint32_t characteristic(const Scalar& s) { return s.characteristic(); }
inline std::string to_string(const Scalar& s) { return s.to_string(); }

}  // namespace modalg
