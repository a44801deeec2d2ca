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

#include "modalg/space.hpp"

#include <functional>

#include "modalg/errors.hpp"

namespace modalg {

Space::Space(std::vector<std::string> names, std::vector<Constraint> cons)
    : names_(std::move(names)), cons_(std::move(cons)), in_constraint_(names_.size(), false) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!lookup_.emplace(names_[i], static_cast<int>(i)).second)
      throw context_mismatch("duplicate variable '" + names_[i] + "'");
  }
  for (const auto& c : cons_)
    for (int v : c.vars) {
      if (v < 0 || v >= static_cast<int>(names_.size()))
        throw context_mismatch("constraint refers to unknown variable");
      in_constraint_[v] = true;
    }
}

int Space::index(std::string_view n) const {
  auto it = lookup_.find(std::string(n));
  return it == lookup_.end() ? -1 : it->second;
}

int Space::require(std::string_view n) const {
  int i = index(n);
  if (i < 0) throw context_mismatch("unknown variable '" + std::string(n) + "'");
  return i;
}

std::vector<Exp> multi_indices(std::size_t n, int d) {
  std::vector<Exp> out;
  if (n == 0) {
    out.push_back({});
    return out;
  }
  for (int tot = 0; tot <= d; ++tot) {
    Exp e(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == n) {
        e[i] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, tot);
  }
  return out;
}

}  // namespace modalg
