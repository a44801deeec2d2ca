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

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "job.hpp"
#include "modalg/errors.hpp"

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitSchema = 2;
constexpr int kExitMath = 3;

int threads_from_env() {
  const char* s = std::getenv("MODALG_THREADS");
  if (!s || !*s) return 1;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end || v < 1) throw modalg::schema_error("MODALG_THREADS must be a positive integer");
  return static_cast<int>(v);
}

}  // namespace

int main(int argc, char** argv) {
  using modalg::cli::json;
  CLI::App app{"modalg: module algebras, Galois hulls and Picard-Vessiot data"};
  std::string task, job_path, out_path;
  modalg::cli::Overrides o;
  bool timing = false;
  app.add_option("task", task, "verify-action, expand, hull, relations, lieritt-solve, umemura, pv-verify, "
                               "pv-hopf, pv-compare or lie-dim")
      ->required();
  app.add_option("--job", job_path, "job file (JSON)")->required();
  app.add_option("--horizon", o.horizon, "override bounds.horizon");
  app.add_option("--degree", o.degree, "override bounds.degree");
  app.add_option("--out", out_path, "report file (default: stdout)");
  app.add_flag("--timing", timing, "record wall time in the report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitSchema;
  }

  try {
    threads_from_env();
    std::ifstream in(job_path);
    if (!in) throw modalg::schema_error("cannot read job file '" + job_path + "'");
    json job;
    try {
      job = json::parse(in);
    } catch (const json::parse_error& e) {
      throw modalg::schema_error(std::string("invalid JSON: ") + e.what());
    }
    auto t0 = std::chrono::steady_clock::now();
    json report = modalg::cli::run_job(task, job, o);
    if (timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
      report["timing"] = {{"wall_ms", ms.count()}};
    }
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
      out << text;
    }
    return 0;
  } catch (const modalg::schema_error& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const modalg::math_error& e) {
    std::cerr << "math error [" << e.check() << "]: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
