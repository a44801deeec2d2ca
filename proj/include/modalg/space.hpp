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

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace modalg {

using Exp = std::vector<int>;

// Terms whose total degree in `vars` exceeds `bound` are discarded.
struct Constraint {
  std::vector<int> vars;
  int bound = 0;
  bool operator==(const Constraint&) const = default;
};

// Ordered variable names plus truncation constraints.
class Space {
 public:
  explicit Space(std::vector<std::string> names, std::vector<Constraint> cons = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int index(std::string_view n) const;
  int require(std::string_view n) const;
  const std::vector<Constraint>& constraints() const { return cons_; }
  bool truncated(int v) const { return in_constraint_[v]; }

  bool admits(const Exp& e) const {
    for (const auto& c : cons_) {
      int d = 0;
      for (int v : c.vars) d += e[v];
      if (d > c.bound) return false;
    }
    return true;
  }

  bool operator==(const Space& o) const { return names_ == o.names_ && cons_ == o.cons_; }

 private:
  std::vector<std::string> names_;
  std::vector<Constraint> cons_;
  std::vector<bool> in_constraint_;
  std::unordered_map<std::string, int> lookup_;
};

using SpacePtr = std::shared_ptr<const Space>;

inline SpacePtr make_space(std::vector<std::string> names, std::vector<Constraint> cons = {}) {
  return std::make_shared<const Space>(std::move(names), std::move(cons));
}

inline bool same_space(const SpacePtr& a, const SpacePtr& b) { return a == b || *a == *b; }

// Graded lexicographic order, earlier variables heavier.
struct GrLex {
  bool operator()(const Exp& a, const Exp& b) const {
    int da = 0, db = 0;
    for (int x : a) da += x;
    for (int x : b) db += x;
    if (da != db) return da < db;
    return a < b;
  }
};

inline int total_degree(const Exp& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline int degree_in(const Exp& e, const std::vector<int>& vars) {
  int d = 0;
  for (int v : vars) d += e[v];
  return d;
}

// All multi-indices with n entries and total degree <= d, graded order.
std::vector<Exp> multi_indices(std::size_t n, int d);

}  // namespace modalg
