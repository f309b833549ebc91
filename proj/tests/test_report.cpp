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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace weakquasi;
namespace fs = std::filesystem;

namespace {

class ScratchDir {
 public:
  explicit ScratchDir(const std::string &name)
      : path_(fs::temp_directory_path() / ("weakquasi_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path &path() const { return path_; }
  fs::path operator/(const std::string &s) const { return path_ / s; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kQubitSweep = "theta0: 10.6\nK: {from: 0, to: 1, points: 11}\n";

TEST(report, number_format) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(-0.0), "0");
  EXPECT_EQ(format_number(-2.5e-13), "-2.5e-13");
  EXPECT_EQ(format_number(1.0), "1");
}

TEST(report, csv_layout_and_round_trip) {
  const ScenarioConfig c = parse_config(kQubitSweep + "outputs: [weak_cq]\n");
  const RunOutput out = run(c, (ScratchDir("csv") / "o"));
  ASSERT_EQ(out.tables.size(), 1u);
  const std::string csv = render_csv(out.tables[0]);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kFigureHeader);
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line.substr(0, 15), "0,H,D,weak_cq,0");
  EXPECT_EQ(out.tables[0].rows.size(), 11u * 4u);

  const FigureTable back = parse_csv(csv);
  EXPECT_EQ(back.quantity, "weak_cq");
  EXPECT_EQ(render_csv(back), csv);
  const CompareReport self = compare(back, out.tables[0], 5e-12);
  EXPECT_TRUE(self.ok());
  EXPECT_LE(self.max_diff, 5e-12);
}

TEST(report, endpoint_rows_are_omitted) {
  const ScenarioConfig c = parse_config(kQubitSweep);
  const RunOutput out = run(c, ScratchDir("endpoints").path());
  for (const FigureTable &t : out.tables) {
    std::size_t expected = 11 * 4;
    if (t.quantity == "weak_mhq") expected = 10 * 4;
    if (t.quantity == "mhq_reconstructed") expected = 9 * 4;
    EXPECT_EQ(t.rows.size(), expected) << t.quantity;
  }
  EXPECT_EQ(out.tables.size(), all_quantities().size() - 1);
}

TEST(report, reruns_are_byte_identical) {
  ScratchDir dir("rerun");
  ScenarioConfig c = parse_config(kQubitSweep + "shots: 20000\nseed: 4\nresamples: 100\n");
  run(c, dir / "a");
  run(c, dir / "b");
  std::size_t files = 0;
  for (const auto &entry : fs::directory_iterator(dir / "a")) {
    if (entry.path().extension() != ".csv") continue;
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename().string()))
        << entry.path();
  }
  EXPECT_EQ(files, 7u);
  c.sweep.seed = 5;
  run(c, dir / "c");
  EXPECT_NE(slurp(dir / "a" / "p_weak.csv"), slurp(dir / "c" / "p_weak.csv"));
}

TEST(report, summary_contents) {
  const ScenarioConfig c = parse_config(kQubitSweep);
  const RunOutput out = run(c, ScratchDir("summary").path());
  const auto &s = out.summary;
  EXPECT_EQ(s["mode"], "exact");
  EXPECT_TRUE(s["shots"].is_null());
  EXPECT_EQ(s["K_grid"].size(), 11u);
  EXPECT_NEAR(s["thresholds"]["global"].get<double>(), 0.44105255185, 1e-9);
  EXPECT_EQ(s["thresholds"]["cells"].size(), 4u);
  for (const auto &[name, residual] : s["normalization_residuals"].items()) {
    EXPECT_LE(residual.get<double>(), 1e-9) << name;
  }
  EXPECT_FALSE(s["normalization_residuals"].contains("C"));
  // The prepared state is MHQ-negative at every K.
  for (const auto &entry : s["negativity"]["mhq"]) EXPECT_GT(entry["negativity"].get<double>(), 0.1);
  EXPECT_TRUE(s.contains("runtime_seconds"));
}

TEST(report, coherence_vanishes_at_endpoints_and_reconstruction_is_flat) {
  const ScenarioConfig c = parse_config(kQubitSweep);
  const RunOutput out = run(c, ScratchDir("flat").path());
  for (const FigureTable &t : out.tables) {
    if (t.quantity == "C") {
      for (const FigureRow &r : t.rows) {
        if (r.K == 0.0 || r.K == 1.0) EXPECT_LE(std::abs(r.value), 1e-12);
      }
    }
    if (t.quantity == "mhq_reconstructed") {
      for (const FigureRow &r : t.rows) {
        const FigureRow &first = t.rows[(r.a == "V" ? 2 : 0) + (r.b == "Dperp" ? 1 : 0)];
        EXPECT_LE(std::abs(r.value - first.value), 1e-10);
      }
    }
  }
}

TEST(report, oracle_and_closed_exports_agree) {
  ScratchDir dir("engines");
  run(parse_config(kQubitSweep + "engine: closed\n"), dir / "closed");
  run(parse_config(kQubitSweep + "engine: oracle\n"), dir / "oracle");
  const CompareReport r = compare_paths(dir / "closed", dir / "oracle", 1e-10);
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.rows_compared, (11 * 5 + 10 + 9) * 4u);
}

TEST(report, noise_shows_up_in_coherence_and_reconstruction) {
  ScratchDir dir("noise");
  run(parse_config(kQubitSweep), dir / "ideal");
  run(parse_config(kQubitSweep + "noise: 0.95\n"), dir / "noisy");
  const CompareReport r = compare_paths(dir / "ideal", dir / "noisy", 1e-6);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.max_diff_by_quantity.at("C"), 1e-4);
  EXPECT_GT(r.max_diff_by_quantity.at("mhq_reconstructed"), 1e-4);
  EXPECT_EQ(r.max_diff_by_quantity.at("mhq"), 0.0);
}

TEST(report, schema_mismatches) {
  FigureTable a{"p_weak", {FigureRow{0.5, "H", "D", "p_weak", 0.1, 0.0}}};
  FigureTable b = a;
  b.rows[0].b = "Dperp";
  EXPECT_THROW(compare(a, b, 1.0), Error);
  b = a;
  b.rows.push_back(a.rows[0]);
  EXPECT_THROW(compare(a, b, 1.0), Error);
  EXPECT_THROW(parse_csv("K,a,b\n"), Error);
  EXPECT_THROW(parse_csv(std::string(kFigureHeader) + "\n0,H,D,p_weak,x,0\n"), Error);
  EXPECT_THROW(parse_csv(std::string(kFigureHeader) + "\n0,H,D,p_weak,1\n"), Error);
  b = a;
  b.rows[0].value = 0.2;
  const CompareReport r = compare(a, b, 0.05);
  ASSERT_EQ(r.exceedances.size(), 1u);
  EXPECT_NEAR(r.exceedances[0].diff, 0.1, 1e-15);
}

#ifdef WEAKQUASI_CLI
int cli(const std::string &args, const fs::path &log) {
  const std::string cmd = std::string("\"") + WEAKQUASI_CLI + "\" " + args + " > \"" +
                          log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

TEST(report, command_line_round_trip) {
  ScratchDir dir("cli");
  std::ofstream(dir / "s.yaml") << kQubitSweep;
  const fs::path log = dir / "log.txt";
  const std::string cfg = (dir / "s.yaml").string();
  EXPECT_EQ(cli("run " + cfg + " --out " + (dir / "a").string(), log), 0) << slurp(log);
  EXPECT_NE(slurp(log).find("0.441052551858"), std::string::npos) << slurp(log);
  EXPECT_EQ(cli("run " + cfg + " --out " + (dir / "b").string() + " --shots 5000 --seed 3", log), 0);
  EXPECT_EQ(cli("compare " + (dir / "a").string() + " " + (dir / "a").string() + " --tol 0", log), 0);
  EXPECT_EQ(cli("compare " + (dir / "a").string() + " " + (dir / "b").string() + " --tol 1e-12", log),
            1);
  EXPECT_EQ(cli("run " + cfg + " --exact --shots 10", log), 2);
  std::ofstream(dir / "bad.yaml") << "theta0: 1\nK: 3\n";
  EXPECT_EQ(cli("run " + (dir / "bad.yaml").string() + " --out " + (dir / "c").string(), log), 2);
  EXPECT_NE(slurp(log).find("bad.yaml:2: field 'K'"), std::string::npos) << slurp(log);
}
#endif

}  // namespace
