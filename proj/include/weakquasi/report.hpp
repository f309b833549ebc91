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

#pragma once

// Plot-ready exports of a sweep: one CSV table per quantity with the header
// "K,a,b,quantity,value,stderr", a JSON run summary, and a row-wise table
// comparison used as a regression harness.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "weakquasi/config.hpp"

namespace weakquasi {

inline constexpr const char *kFigureHeader = "K,a,b,quantity,value,stderr";

struct FigureRow {
  double K = 0.0;
  std::string a;
  std::string b;
  std::string quantity;
  double value = 0.0;
  double std_error = 0.0;
};

struct FigureTable {
  std::string quantity;
  std::vector<FigureRow> rows;
};

/// 12 significant digits, "%.12g", with negative zero printed as 0.
std::string format_number(double x);

/// One table per requested tabular quantity, rows ordered by K then (a, b).
std::vector<FigureTable> build_figure_tables(const ScenarioConfig &config,
                                             const SweepResult &result);

std::string render_csv(const FigureTable &table);
FigureTable parse_csv(const std::string &text, const std::string &source = "<csv>");
FigureTable read_csv(const std::filesystem::path &path);

nlohmann::ordered_json build_summary(const ScenarioConfig &config, const SweepResult &result,
                                     const std::vector<FigureTable> &tables,
                                     double runtime_seconds);

struct RunOutput {
  SweepResult result;
  std::vector<FigureTable> tables;
  nlohmann::ordered_json summary;
};

/// Runs the sweep and writes <out>/<quantity>.csv plus <out>/summary.json.
RunOutput run(const ScenarioConfig &config, const std::filesystem::path &out_dir);

struct RowDiff {
  FigureRow a;
  FigureRow b;
  double diff = 0.0;
};

struct CompareReport {
  std::size_t rows_compared = 0;
  double max_diff = 0.0;
  std::map<std::string, double> max_diff_by_quantity;
  std::vector<RowDiff> exceedances;

  bool ok() const { return exceedances.empty(); }
};

/// Row-wise |value_a - value_b| keyed on (K, a, b, quantity). Tables with
/// different key sets raise a SchemaMismatch error.
CompareReport compare(const FigureTable &a, const FigureTable &b, double tolerance);
/// Files, or directories holding the same set of *.csv tables.
CompareReport compare_paths(const std::filesystem::path &a, const std::filesystem::path &b,
                            double tolerance);

}  // namespace weakquasi
