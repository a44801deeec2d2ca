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

#include "modalg/parse.hpp"

#include <cctype>

namespace modalg {

namespace {

class Parser {
 public:
  Parser(std::string_view s, SpacePtr series, SpacePtr field, std::uint32_t p)
      : s_(s), series_(std::move(series)), field_(std::move(field)), p_(p) {
    if (!series_) series_ = make_space({});
    zero_ = RatFunc(field_, p_);
  }

  Poly<RatFunc> run() {
    Poly<RatFunc> v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  using V = Poly<RatFunc>;

  [[noreturn]] void fail(const std::string& what) const {
    throw schema_error("cannot parse expression '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  V constant(const RatFunc& c) const { return V::constant(series_, c); }

  V expr() {
    V v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }
  V term() {
    V v = unary();
    for (;;) {
      if (eat('*')) {
        v = v * unary();
      } else if (eat('/')) {
        V d = unary();
        if (d.is_zero()) throw division_by_zero("division by zero in '" + std::string(s_) + "'");
        if (d.is_constant())
          v = v * inverse(d.constant_term());
        else
          v = v * series_recip(d);
      } else {
        return v;
      }
    }
  }
  V unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  long integer() {
    skip();
    bool neg = false;
    if (eat('-')) neg = true;
    skip();
    std::size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail("expected integer exponent");
    long e = std::stol(std::string(s_.substr(st, pos_ - st)));
    return neg ? -e : e;
  }
  V power() {
    V base = atom();
    if (!eat('^')) return base;
    long e;
    if (eat('(')) {
      e = integer();
      if (!eat(')')) fail("expected ')'");
    } else {
      e = integer();
    }
    if (e < 0) {
      base = base.is_constant() ? constant(inverse(base.constant_term())) : series_recip(base);
      e = -e;
    }
    return base.pow(static_cast<int>(e));
  }
  V atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (eat('(')) {
      V v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return constant(RatFunc::constant(field_, Scalar::parse(s_.substr(st, pos_ - st), p_)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '@'))
        ++pos_;
      std::string name(s_.substr(st, pos_ - st));
      skip();
      if (pos_ < s_.size() && s_[pos_] == '[') {
        std::size_t close = s_.find(']', pos_);
        if (close == std::string_view::npos) fail("unclosed '['");
        for (std::size_t i = pos_; i <= close; ++i)
          if (!std::isspace(static_cast<unsigned char>(s_[i]))) name += s_[i];
        pos_ = close + 1;
      }
      if (name == "exp" && eat('(')) {
        V v = expr();
        if (!eat(')')) fail("expected ')'");
        return series_exp(v);
      }
      int i = series_->index(name);
      if (i >= 0) return V::variable(series_, i, one_like(zero_));
      int j = field_->index(name);
      if (j >= 0) return constant(RatFunc::variable(field_, j, p_));
      fail("unknown symbol '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  SpacePtr series_, field_;
  std::uint32_t p_;
  RatFunc zero_;
};

}  // namespace

Poly<RatFunc> parse_series(std::string_view text, const SpacePtr& series, const SpacePtr& field,
                           std::uint32_t p) {
  return Parser(text, series, field, p).run();
}

RatFunc parse_ratfunc(std::string_view text, const SpacePtr& field, std::uint32_t p) {
  return Parser(text, nullptr, field, p).run().constant_term();
}

MPoly parse_mpoly(std::string_view text, const SpacePtr& sp, std::uint32_t p) {
  RatFunc f = parse_ratfunc(text, sp, p);
  if (!f.is_polynomial()) throw schema_error("expected a polynomial: '" + std::string(text) + "'");
  return f.num() * f.den().constant_term().inverse();
}

}  // namespace modalg
