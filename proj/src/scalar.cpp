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

#include "modalg/scalar.hpp"

#include <limits>

namespace modalg {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return r.get_ui();
}

}  // namespace

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void check_characteristic(long p) {
  if (p == 0) return;
  if (p < 0 || p > std::numeric_limits<std::int32_t>::max() || !is_prime(static_cast<std::uint64_t>(p)))
    throw invalid_field("characteristic " + std::to_string(p) + " is not 0 or a prime");
}

Scalar::Scalar(long v, std::uint32_t p) : p_(p) {
  if (p) {
    long r = v % static_cast<long>(p);
    if (r < 0) r += p;
    r_ = static_cast<std::uint64_t>(r);
  } else {
    q_ = v;
  }
}

Scalar::Scalar(const mpq_class& q, std::uint32_t p) : p_(p) {
  if (p) {
    std::uint64_t n = reduce(q.get_num(), p), d = reduce(q.get_den(), p);
    if (d == 0) throw division_by_zero("denominator vanishes mod " + std::to_string(p));
    r_ = mulmod(n, powmod(d, p - 2, p), p);
  } else {
    q_ = q;
    q_.canonicalize();
  }
}

Scalar Scalar::parse(std::string_view s, std::uint32_t p) {
  mpq_class q;
  if (q.set_str(std::string(s), 10) != 0) throw invalid_field("bad number '" + std::string(s) + "'");
  if (q.get_den() == 0) throw division_by_zero();
  q.canonicalize();
  return Scalar(q, p);
}

void Scalar::check(const Scalar& o) const {
  if (p_ != o.p_)
    throw context_mismatch("scalars of characteristic " + std::to_string(p_) + " and " +
                           std::to_string(o.p_));
}

Scalar& Scalar::operator+=(const Scalar& o) {
  check(o);
  if (p_) {
    r_ += o.r_;
    if (r_ >= p_) r_ -= p_;
  } else {
    q_ += o.q_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check(o);
  if (p_) {
    r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + p_ - o.r_;
  } else {
    q_ -= o.q_;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check(o);
  if (p_)
    r_ = mulmod(r_, o.r_, p_);
  else
    q_ *= o.q_;
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_)
    r.r_ = r_ ? p_ - r_ : 0;
  else
    r.q_ = -q_;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw division_by_zero();
  Scalar r = *this;
  if (p_)
    r.r_ = powmod(r_, p_ - 2, p_);
  else
    r.q_ = 1 / q_;
  return r;
}

Scalar Scalar::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1, p_), b = *this;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::string Scalar::to_string() const {
  if (p_) return std::to_string(r_);
  return q_.get_str();
}

Scalar binom(long i, long j, std::uint32_t p) {
  if (j < 0 || i < 0 || j > i) return Scalar(0, p);
  if (p == 0) {
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(i), static_cast<unsigned long>(j));
    return Scalar(mpq_class(z), 0);
  }
  // Lucas: product of digit binomials.
  std::uint64_t r = 1;
  while (i || j) {
    long a = i % p, b = j % p;
    if (b > a) return Scalar(0, p);
    mpz_class z;
    mpz_bin_uiui(z.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
    r = mulmod(r, reduce(z, p), p);
    i /= p;
    j /= p;
  }
  return Scalar(static_cast<long>(r), p);
}

Scalar binom(const std::vector<int>& i, const std::vector<int>& j, std::uint32_t p) {
  Scalar r(1, p);
  for (std::size_t k = 0; k < i.size(); ++k) r *= binom(i[k], j[k], p);
  return r;
}

Scalar factorial(long n, std::uint32_t p) {
  Scalar r(1, p);
  for (long k = 2; k <= n; ++k) r *= Scalar(k, p);
  return r;
}

}  // namespace modalg
