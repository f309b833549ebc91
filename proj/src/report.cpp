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

#include "weakquasi/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace weakquasi {

namespace {

void append_rows(FigureTable &table, double K, const Observable &A, const Observable &B,
                 const RealMatrix &value, const RealMatrix &std_error) {
  for (Eigen::Index a = 0; a < value.rows(); ++a) {
    for (Eigen::Index b = 0; b < value.cols(); ++b) {
      const double v = value(a, b);
      const double e = std_error.size() == 0 ? 0.0 : std_error(a, b);
      if (!std::isfinite(v) || !std::isfinite(e)) {
        fail(ErrorKind::InternalConsistency,
             "non-finite " + table.quantity + " at K = " + format_number(K) + ", cell (" +
                 A.labels()[a] + "," + B.labels()[b] + ")");
      }
      table.rows.push_back(FigureRow{K, A.labels()[a], B.labels()[b], table.quantity, v, e});
    }
  }
}

void write_file(const std::filesystem::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path.string());
  out << content;
  if (!out) fail(ErrorKind::Io, "write failed for " + path.string());
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

double parse_double(const std::string &field, const std::string &where) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != field.size()) {
    fail(ErrorKind::SchemaMismatch, where + ": '" + field + "' is not a number");
  }
  return v;
}

std::string row_key(const FigureRow &r) {
  return format_number(r.K) + "," + r.a + "," + r.b + "," + r.quantity;
}

bool is_quasi(const std::string &quantity) {
  return quantity == "cq" || quantity == "mhq" || quantity == "weak_cq" ||
         quantity == "weak_mhq" || quantity == "mhq_reconstructed";
}

nlohmann::ordered_json optional_number(const std::optional<double> &x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drops the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  std::string s(buf);
  return s == "-0" ? "0" : s;
}

std::vector<FigureTable> build_figure_tables(const ScenarioConfig &config,
                                             const SweepResult &result) {
  const Observable &A = config.scenario.A;
  const Observable &B = config.scenario.B;
  const RealMatrix no_error;
  std::vector<FigureTable> tables;
  for (Quantity q : config.outputs) {
    if (q == Quantity::Thresholds) continue;
    FigureTable table{quantity_name(q), {}};
    for (const SweepRecord &rec : result.records) {
      switch (q) {
        case Quantity::PWeak:
          append_rows(table, rec.K, A, B, rec.p_weak.value, rec.p_weak.std_error);
          break;
        case Quantity::CQ:
          append_rows(table, rec.K, A, B, result.cq.value, result.cq.std_error);
          break;
        case Quantity::MHQ:
          append_rows(table, rec.K, A, B, result.mhq, no_error);
          break;
        case Quantity::WeakCQ:
          append_rows(table, rec.K, A, B, rec.weak_cq.value, rec.weak_cq.std_error);
          break;
        case Quantity::WeakMHQ:
          if (rec.weak_mhq) {
            append_rows(table, rec.K, A, B, rec.weak_mhq->value, rec.weak_mhq->std_error);
          }
          break;
        case Quantity::Coherence:
          append_rows(table, rec.K, A, B, rec.coherence.value, rec.coherence.std_error);
          break;
        case Quantity::MhqReconstructed:
          if (rec.mhq_reconstructed) {
            append_rows(table, rec.K, A, B, rec.mhq_reconstructed->value,
                        rec.mhq_reconstructed->std_error);
          }
          break;
        case Quantity::Thresholds:
          break;
      }
    }
    tables.push_back(std::move(table));
  }
  return tables;
}

std::string render_csv(const FigureTable &table) {
  std::string out = kFigureHeader;
  out += '\n';
  for (const FigureRow &r : table.rows) {
    out += format_number(r.K) + ',' + r.a + ',' + r.b + ',' + r.quantity + ',' +
           format_number(r.value) + ',' + format_number(r.std_error) + '\n';
  }
  return out;
}

FigureTable parse_csv(const std::string &text, const std::string &source) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::SchemaMismatch, source + ": empty table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kFigureHeader) {
    fail(ErrorKind::SchemaMismatch, source + ": header '" + line + "' differs from '" +
                                        kFigureHeader + "'");
  }
  FigureTable table;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    const std::string where = source + ":" + std::to_string(lineno);
    if (fields.size() != 6) fail(ErrorKind::SchemaMismatch, where + ": expected 6 fields");
    FigureRow row{parse_double(fields[0], where), fields[1], fields[2], fields[3],
                  parse_double(fields[4], where), parse_double(fields[5], where)};
    if (table.quantity.empty()) table.quantity = row.quantity;
    table.rows.push_back(std::move(row));
  }
  return table;
}

FigureTable read_csv(const std::filesystem::path &path) {
  return parse_csv(read_file(path), path.string());
}

nlohmann::ordered_json build_summary(const ScenarioConfig &config, const SweepResult &result,
                                     const std::vector<FigureTable> &tables,
                                     double runtime_seconds) {
  using json = nlohmann::ordered_json;
  const SweepOptions &o = config.sweep;
  json s;
  s["scenario"] = config.scenario.id;
  s["dimension"] = config.scenario.rho.dim();
  s["A"] = config.scenario.A.name();
  s["B"] = config.scenario.B.name();
  s["mode"] = o.shots ? "sampled" : "exact";
  s["shots"] = o.shots ? json(*o.shots) : json(nullptr);
  s["noise_visibility"] = o.noise.visibility;
  s["resamples"] = o.resamples;
  s["seed"] = o.seed;
  s["engine"] = o.engine == Engine::Closed ? "closed" : "oracle";
  s["K_grid"] = o.K_grid;

  json cells = json::array();
  const ThresholdReport &t = result.thresholds;
  for (int a = 0; a < t.dim_a; ++a) {
    for (int b = 0; b < t.dim_b; ++b) {
      cells.push_back(json{{"a", config.scenario.A.labels()[a]},
                           {"b", config.scenario.B.labels()[b]},
                           {"K_bar", optional_number(t.at(a, b))}});
    }
  }
  s["thresholds"] = json{{"global", optional_number(t.global)}, {"cells", cells}};

  json negativity_totals = json::object();
  json residuals = json::object();
  for (const FigureTable &table : tables) {
    std::map<std::string, std::pair<double, double>> by_K;  // K -> (sum, negative mass)
    std::vector<std::string> order;
    for (const FigureRow &r : table.rows) {
      const std::string k = format_number(r.K);
      if (!by_K.count(k)) order.push_back(k);
      auto &acc = by_K[k];
      acc.first += r.value;
      acc.second += std::max(0.0, -r.value);
    }
    if (table.quantity == "C") continue;
    double worst = 0.0;
    json neg = json::array();
    for (const auto &k : order) {
      worst = std::max(worst, std::abs(by_K[k].first - 1.0));
      if (is_quasi(table.quantity)) {
        neg.push_back(json{{"K", std::stod(k)}, {"negativity", by_K[k].second}});
      }
    }
    residuals[table.quantity] = worst;
    if (is_quasi(table.quantity)) negativity_totals[table.quantity] = neg;
  }
  s["negativity"] = negativity_totals;
  s["normalization_residuals"] = residuals;
  s["runtime_seconds"] = runtime_seconds;
  return s;
}

RunOutput run(const ScenarioConfig &config, const std::filesystem::path &out_dir) {
  const auto start = std::chrono::steady_clock::now();
  RunOutput output;
  output.result = run_scenario(config.scenario, config.sweep);
  output.tables = build_figure_tables(config, output.result);
  const double runtime =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  output.summary = build_summary(config, output.result, output.tables, runtime);

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(ErrorKind::Io, "cannot create " + out_dir.string() + ": " + ec.message());
  for (const FigureTable &table : output.tables) {
    write_file(out_dir / (table.quantity + ".csv"), render_csv(table));
  }
  write_file(out_dir / "summary.json", output.summary.dump(2) + "\n");
  return output;
}

CompareReport compare(const FigureTable &a, const FigureTable &b, double tolerance) {
  if (!(tolerance >= 0.0)) fail(ErrorKind::InvalidInput, "tolerance must be nonnegative");
  std::map<std::string, const FigureRow *> index;
  for (const FigureRow &r : b.rows) {
    if (!index.emplace(row_key(r), &r).second) {
      fail(ErrorKind::SchemaMismatch, "duplicate row " + row_key(r));
    }
  }
  if (a.rows.size() != b.rows.size()) {
    fail(ErrorKind::SchemaMismatch, "tables have " + std::to_string(a.rows.size()) + " and " +
                                        std::to_string(b.rows.size()) + " rows");
  }
  CompareReport report;
  for (const FigureRow &r : a.rows) {
    const auto it = index.find(row_key(r));
    if (it == index.end()) fail(ErrorKind::SchemaMismatch, "row " + row_key(r) + " has no match");
    const double diff = std::abs(r.value - it->second->value);
    ++report.rows_compared;
    report.max_diff = std::max(report.max_diff, diff);
    double &q = report.max_diff_by_quantity[r.quantity];
    q = std::max(q, diff);
    if (!(diff <= tolerance)) report.exceedances.push_back(RowDiff{r, *it->second, diff});
  }
  return report;
}

CompareReport compare_paths(const std::filesystem::path &a, const std::filesystem::path &b,
                            double tolerance) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(a) && !fs::is_directory(b)) {
    return compare(read_csv(a), read_csv(b), tolerance);
  }
  if (!fs::is_directory(a) || !fs::is_directory(b)) {
    fail(ErrorKind::SchemaMismatch, "cannot compare a directory with a file");
  }
  auto list = [](const fs::path &dir) {
    std::set<std::string> names;
    for (const auto &entry : fs::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".csv") {
        names.insert(entry.path().filename().string());
      }
    }
    return names;
  };
  const auto names_a = list(a);
  const auto names_b = list(b);
  if (names_a != names_b) fail(ErrorKind::SchemaMismatch, "directories hold different tables");
  if (names_a.empty()) fail(ErrorKind::SchemaMismatch, "no CSV tables to compare");
  CompareReport total;
  for (const auto &name : names_a) {
    CompareReport r = compare(read_csv(a / name), read_csv(b / name), tolerance);
    total.rows_compared += r.rows_compared;
    total.max_diff = std::max(total.max_diff, r.max_diff);
    for (const auto &[q, d] : r.max_diff_by_quantity) {
      double &slot = total.max_diff_by_quantity[q];
      slot = std::max(slot, d);
    }
    total.exceedances.insert(total.exceedances.end(), r.exceedances.begin(), r.exceedances.end());
  }
  return total;
}

}  // namespace weakquasi
