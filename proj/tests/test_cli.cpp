// Copyright 2026 The quasikp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "quasikp/commands.hpp"
#include "quasikp/error.hpp"
#include "quasikp/table.hpp"

namespace {

using namespace qkp;
using namespace qkp::cli;
namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("quasikp_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
  std::ostringstream log_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const std::string& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::string header(const std::string& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

BandsOptions small_bands(const std::string& out) {
  BandsOptions o;
  o.L = 15.0;
  o.a = 0.2;
  o.theta_points = 9;
  o.n_bands = 4;
  o.output.out = out;
  return o;
}

TEST_F(CliTest, BandsHasThreeModelsAndIsDeterministic) {
  ASSERT_EQ(cmd_bands(small_bands(path("a.csv")), log_), kExitOk) << log_.str();
  ASSERT_EQ(cmd_bands(small_bands(path("b.csv")), log_), kExitOk) << log_.str();
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  const auto rows = read_csv(path("a.csv"));
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows[0], (std::vector<std::string>{"model", "theta", "band", "E"}));
  std::set<std::string> models;
  for (std::size_t i = 1; i < rows.size(); ++i) models.insert(rows[i][0]);
  EXPECT_EQ(models, (std::set<std::string>{"constant-a", "energy-dependent", "kp1d-reduced"}));
}

TEST_F(CliTest, BandTablePrefixWritesPerModelFiles) {
  auto o = small_bands(path("bands.csv"));
  o.rstar = 0.0;
  o.band_table_prefix = path("tbl");
  ASSERT_EQ(cmd_bands(o, log_), kExitOk) << log_.str();
  bool found = false;
  for (const auto& e : fs::directory_iterator(dir_)) {
    const auto name = e.path().filename().string();
    if (name.rfind("tbl", 0) == 0) {
      found = true;
      EXPECT_EQ(header(e.path().string()), "theta,qL_over_pi,band_index,E_over_hbaromega");
    }
  }
  EXPECT_TRUE(found);
}

TEST_F(CliTest, BandsConfigErrors) {
  auto o = small_bands(path("x.csv"));
  o.L = -1.0;
  EXPECT_EQ(cmd_bands(o, log_), kExitConfig);
  o = small_bands(path("x.csv"));
  o.output.format = "xml";
  EXPECT_EQ(cmd_bands(o, log_), kExitConfig);
  o = small_bands(path("x.csv"));
  o.energy_argument = "kinetic";
  EXPECT_EQ(cmd_bands(o, log_), kExitConfig);
}

TEST_F(CliTest, BandsVsAColumnsAndFreeRow) {
  BandsVsAOptions o;
  o.L = {1.0, 5.0};
  o.a = {0.0, 0.5};
  o.n_bands = 3;
  o.output.out = path("fig4.csv");
  ASSERT_EQ(cmd_bands_vs_a(o, log_), kExitOk) << log_.str();
  const auto rows = read_csv(path("fig4.csv"));
  EXPECT_EQ(rows[0], (std::vector<std::string>{"a_over_aperp", "band", "E_theta0", "E_thetapi",
                                               "L_over_aperp", "overlap", "status"}));
  EXPECT_EQ(rows.size(), 1u + 2 * 2 * 3);
  // a = 0, L = 5, band 0: free edges 1 and 1 + (pi/5)^2 / 2.
  bool seen = false;
  for (const auto& r : rows) {
    if (r[0] == "0" && r[1] == "0" && r[4] == "5") {
      seen = true;
      EXPECT_NEAR(std::stod(r[2]), 1.0, 1e-12);
      EXPECT_NEAR(std::stod(r[3]), 1.0 + 0.5 * std::pow(std::numbers::pi / 5.0, 2), 1e-12);
    }
  }
  EXPECT_TRUE(seen);
}

TEST_F(CliTest, ScatlenResolvesCaptionCutoffAndMarksResonance) {
  ScatlenOptions o;
  o.a0 = 1.0;
  o.bound_states = 1;
  o.points = 120;
  o.output.out = path("fig2.csv");
  ASSERT_EQ(cmd_scatlen(o, log_), kExitOk) << log_.str();
  EXPECT_NE(log_.str().find("b/R* = 0.43"), std::string::npos) << log_.str();
  const auto rows = read_csv(path("fig2.csv"));
  EXPECT_EQ(rows[0], (std::vector<std::string>{"E_over_Estar", "a_over_Rstar", "model", "resonance"}));
  int markers = 0;
  double a0 = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][3] == "1") {
      ++markers;
      EXPECT_NEAR(std::stod(rows[i][0]), 3.76, 0.1);
    }
    if (rows[i][2] == "low-energy") {
      const double e = std::stod(rows[i][0]);
      const double a = std::stod(rows[i][1]);
      if (a0 == 0.0) a0 = a - std::numbers::pi / 3.0 * std::sqrt(e);
      EXPECT_NEAR(a, a0 + std::numbers::pi / 3.0 * std::sqrt(e), 1e-12);
    }
  }
  EXPECT_EQ(markers, 1);
  EXPECT_NEAR(a0, 1.0, 1e-3);
}

TEST_F(CliTest, ScatlenNeedsExactlyOneOfA0AndB) {
  ScatlenOptions o;
  o.output.out = path("x.csv");
  EXPECT_EQ(cmd_scatlen(o, log_), kExitConfig);
  o.a0 = 1.0;
  o.b = 0.4;
  EXPECT_EQ(cmd_scatlen(o, log_), kExitConfig);
}

TEST_F(CliTest, A1deffModesAndDecay) {
  A1deffOptions o;
  o.L = {3.0, 30.0};
  o.theta_points = 33;
  o.output.out = path("fig8.csv");
  ASSERT_EQ(cmd_a1deff(o, log_), kExitOk) << log_.str();
  const auto rows = read_csv(path("fig8.csv"));
  EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "L_over_aperp", "mode", "a1deff_over_aperp"}));
  EXPECT_EQ(rows.size(), 1u + 2 * 2 * 33);
  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i][1] == "30") {
      lo = std::min(lo, std::stod(rows[i][3]));
      hi = std::max(hi, std::stod(rows[i][3]));
    }
  }
  EXPECT_LT(hi - lo, 1e-6);
  o.mode = "exact";
  EXPECT_EQ(cmd_a1deff(o, log_), kExitConfig);
}

TEST_F(CliTest, MeffFreeAndRepulsive) {
  MeffOptions o;
  o.a = {0.0, 2.0};
  o.output.out = path("fig7.csv");
  ASSERT_EQ(cmd_meff(o, log_), kExitOk) << log_.str();
  const auto rows = read_csv(path("fig7.csv"));
  EXPECT_EQ(rows[0],
            (std::vector<std::string>{"a_axis", "L_over_aperp", "model", "m_over_meff", "fit_ok"}));
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(std::stod(rows[1][3]), 1.0, 1e-3);
  EXPECT_LT(std::stod(rows[2][3]), 0.0);
}

TEST_F(CliTest, JsonMirrorsColumns) {
  A1deffOptions o;
  o.L = {1.5};
  o.theta_points = 5;
  o.mode = "series";
  o.output = {path("fig8.json"), "json"};
  ASSERT_EQ(cmd_a1deff(o, log_), kExitOk) << log_.str();
  const auto j = nlohmann::json::parse(slurp(path("fig8.json")));
  for (const char* c : {"theta", "L_over_aperp", "mode", "a1deff_over_aperp"}) {
    ASSERT_TRUE(j.contains(c)) << c;
    EXPECT_EQ(j[c].size(), 5u);
  }
  EXPECT_EQ(j["mode"][0], "series");
}

TEST(TableIo, CsvUsesDotAndShortestRoundTrip) {
  Table t{{"x", "n", "s"}, {}};
  t.add({0.1, 3LL, std::string("a")});
  t.add({1.0 / 3.0, -1LL, std::string("b")});
  std::ostringstream out;
  write_csv(t, out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,n,s");
  std::getline(in, line);
  EXPECT_EQ(line, "0.1,3,a");
  std::getline(in, line);
  EXPECT_EQ(std::stod(line.substr(0, line.find(','))), 1.0 / 3.0);
}

TEST(TableIo, JsonNonFiniteIsNull) {
  Table t{{"x"}, {}};
  t.add({std::nan("")});
  std::ostringstream out;
  write_json(t, out);
  EXPECT_TRUE(nlohmann::json::parse(out.str())["x"][0].is_null());
}

TEST(TableIo, UnknownFormatIsConfigError) {
  EXPECT_EQ(parse_table_format("csv"), TableFormat::csv);
  EXPECT_EQ(parse_table_format("json"), TableFormat::json);
  EXPECT_THROW(parse_table_format("xlsx"), ConfigError);
}

}  // namespace
