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

#include <string_view>

#include "modalg/ratfunc.hpp"
#include "modalg/series.hpp"

namespace modalg {

// Parses + - * / ^int ( ) exp(...) over numbers and variable names.
// Names resolve first to `series` variables (may be null), then to `field`
// variables. Bracketed names such as Y[1] or Y_2[0,1] are single symbols.
Poly<RatFunc> parse_series(std::string_view text, const SpacePtr& series, const SpacePtr& field,
                           std::uint32_t p);
RatFunc parse_ratfunc(std::string_view text, const SpacePtr& field, std::uint32_t p);
MPoly parse_mpoly(std::string_view text, const SpacePtr& sp, std::uint32_t p);

}  // namespace modalg
