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

#include <stdexcept>
#include <string>

namespace modalg {

// A mathematical precondition failed. `check` names it for reports and exit codes.
class math_error : public std::runtime_error {
 public:
  math_error(std::string check, const std::string& what)
      : std::runtime_error(what), check_(std::move(check)) {}
  const std::string& check() const noexcept { return check_; }

 private:
  std::string check_;
};

struct invalid_field : math_error {
  explicit invalid_field(const std::string& w) : math_error("field", w) {}
};
struct context_mismatch : math_error {
  explicit context_mismatch(const std::string& w) : math_error("context", w) {}
};
struct division_by_zero : math_error {
  explicit division_by_zero(const std::string& w = "division by zero")
      : math_error("division", w) {}
};
struct not_invertible : math_error {
  explicit not_invertible(const std::string& w) : math_error("invertibility", w) {}
};
struct horizon_error : math_error {
  explicit horizon_error(const std::string& w) : math_error("horizon", w) {}
};
struct budget_exceeded : math_error {
  explicit budget_exceeded(const std::string& w) : math_error("budget", w) {}
};

// Malformed job input.
class schema_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace modalg
