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

#include <optional>
#include <string>

#include "json.hpp"

namespace modalg::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kJobSchema = "modalg-job/1";
inline constexpr const char* kReportSchema = "modalg-report/1";

struct Overrides {
  std::optional<int> horizon;
  std::optional<int> degree;
};

bool known_task(const std::string& task);

// Parses and runs one job; throws schema_error or math_error.
json run_job(const std::string& task, const json& job, const Overrides& o);

}  // namespace modalg::cli
