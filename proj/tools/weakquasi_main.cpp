// Copyright 2026 The weakquasi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// weakquasi command-line front end:
//   weakquasi run <config> [--out DIR] [--seed S] [--exact | --shots N]
//   weakquasi compare <a> <b> --tol T

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "weakquasi/report.hpp"

namespace {

int run_command(const std::string &config_path, const std::string &out_dir,
                std::optional<std::uint64_t> seed, bool exact, std::optional<std::int64_t> shots) {
  weakquasi::ScenarioConfig config = weakquasi::load_config(config_path);
  if (seed) config.sweep.seed = *seed;
  if (exact) config.sweep.shots.reset();
  if (shots) config.sweep.shots = *shots;

  const weakquasi::RunOutput out = weakquasi::run(config, out_dir);
  std::cout << "scenario: " << config.scenario.id << "\n";
  std::cout << "mode: " << (config.sweep.shots ? "sampled" : "exact") << ", "
            << config.sweep.K_grid.size() << " strengths\n";
  for (const auto &table : out.tables) {
    std::cout << "wrote " << (std::filesystem::path(out_dir) / (table.quantity + ".csv")).string()
              << " (" << table.rows.size() << " rows)\n";
  }
  const auto &global = out.result.thresholds.global;
  std::cout << "negativity threshold K_bar: "
            << (global ? weakquasi::format_number(*global) : std::string("none")) << "\n";
  return 0;
}

int compare_command(const std::string &a, const std::string &b, double tol) {
  const weakquasi::CompareReport report = weakquasi::compare_paths(a, b, tol);
  std::cout << "rows compared: " << report.rows_compared << "\n";
  std::cout << "max |diff|: " << weakquasi::format_number(report.max_diff) << "\n";
  for (const auto &[quantity, diff] : report.max_diff_by_quantity) {
    std::cout << "  " << quantity << ": " << weakquasi::format_number(diff) << "\n";
  }
  for (const auto &d : report.exceedances) {
    std::cout << "exceeds: K=" << weakquasi::format_number(d.a.K) << " " << d.a.a << "," << d.a.b
              << " " << d.a.quantity << " " << weakquasi::format_number(d.a.value) << " vs "
              << weakquasi::format_number(d.b.value) << " (|diff| "
              << weakquasi::format_number(d.diff) << ")\n";
  }
  std::cout << (report.ok() ? "OK" : "FAIL") << "\n";
  return report.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Weak-measurement quasiprobability simulator"};
  app.require_subcommand(1);

  auto *run = app.add_subcommand("run", "Run a K-sweep scenario and export tables");
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> shots;
  bool exact = false;
  run->add_option("config", config_path, "Scenario document (YAML)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "RNG seed override");
  auto *exact_flag = run->add_flag("--exact", exact, "Use exact tables (infinite statistics)");
  auto *shots_opt = run->add_option("--shots", shots, "Poisson-sampled shots per setting")
                        ->check(CLI::PositiveNumber);
  exact_flag->excludes(shots_opt);

  auto *cmp = app.add_subcommand("compare", "Compare two exported tables or output directories");
  std::string path_a;
  std::string path_b;
  double tol = 0.0;
  cmp->add_option("a", path_a, "First table or directory")->required()->check(CLI::ExistingPath);
  cmp->add_option("b", path_b, "Second table or directory")->required()->check(CLI::ExistingPath);
  cmp->add_option("--tol", tol, "Absolute tolerance")->required()->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    // Usage errors share the generic error status.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) return run_command(config_path, out_dir, seed, exact, shots);
    if (*cmp) return compare_command(path_a, path_b, tol);
  } catch (const weakquasi::Error &e) {
    std::cerr << "error (" << weakquasi::error_kind_name(e.kind()) << "): " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
