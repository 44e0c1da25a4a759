// Copyright 2026 The unsubx Authors
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
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string("\"") + UNSUBX_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::string kFixture = std::string(UNSUBX_TEST_DATA_DIR) + "/fixture10.csv";

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("unsubx_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

TEST_F(CliTest, SampleJsonSummary) {
  const auto r = run("--sample --format json");
  ASSERT_EQ(r.code, 0);
  const auto body = json::parse(r.out);
  EXPECT_EQ(body["n"], 431);
  EXPECT_EQ(body["view_n"], 431);
  EXPECT_EQ(body["summary"]["package"]["total"]["titles"], 431);
}

TEST_F(CliTest, TableOutput) {
  const auto r = run("--sample");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("TRUE"), std::string::npos);
  EXPECT_NE(r.out.find("BLANK"), std::string::npos);
}

TEST_F(CliTest, FixtureMetrics) {
  const auto r = run("\"" + kFixture + "\" --format json");
  ASSERT_EQ(r.code, 0);
  const auto body = json::parse(r.out);
  EXPECT_EQ(body["n"], 10);
  EXPECT_DOUBLE_EQ(body["total_weighted_usage"].get<double>(), 10595);
  EXPECT_NEAR(body["package_if_percent"].get<double>(), 61.2883435582822, 1e-9);
}

TEST_F(CliTest, FiltersNarrowView) {
  const auto r = run("\"" + kFixture + "\" --format json --price-min 1000 --statuses TRUE,FALSE");
  ASSERT_EQ(r.code, 0);
  // Alpha Letters, Gamma Review, Zeta Research, Eta Studies.
  EXPECT_EQ(json::parse(r.out)["view_n"], 4);
}

TEST_F(CliTest, SetAndExport) {
  const auto out = dir_ / "edited.csv";
  const auto r = run("--sample --set \"Science Advance=FALSE\" --export \"" + out.string() + "\" --format json");
  ASSERT_EQ(r.code, 0);
  const auto body = json::parse(r.out);
  ASSERT_EQ(body["edits"].size(), 1u);
  const auto edited = slurp(out);
  ASSERT_FALSE(edited.empty());
  EXPECT_NE(edited.find("Science Advance"), std::string::npos);
}

TEST_F(CliTest, ChartsWritten) {
  const auto r = run("\"" + kFixture + "\" --out-dir \"" + dir_.string() + "\"");
  ASSERT_EQ(r.code, 0);
  std::size_t count = 0;
  for (const auto& entry : fs::directory_iterator(dir_)) {
    if (entry.path().extension() != ".json") continue;
    ++count;
    const auto doc = json::parse(slurp(entry.path()));
    EXPECT_EQ(doc["usermeta"]["chart_id"].get<std::string>() + ".json", entry.path().filename().string());
  }
  EXPECT_EQ(count, 12u);
}

TEST_F(CliTest, DeterministicJson) {
  const auto a = run("\"" + kFixture + "\" --format json");
  const auto b = run("\"" + kFixture + "\" --format json");
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("--sample \"" + kFixture + "\"").code, 2);
  EXPECT_EQ(run("--sample --price-min 5 --price-max 1").code, 2);
  EXPECT_EQ(run("--sample --set nope=TRUE").code, 2);
  EXPECT_EQ(run("--sample --set science-advance-1=YES").code, 2);
  EXPECT_EQ(run("--sample --weights 1,2").code, 2);
  EXPECT_EQ(run("--sample --format xml").code, 2);
  EXPECT_EQ(run("/nonexistent/file.csv").code, 1);
}

TEST_F(CliTest, Version) {
  const auto r = run("--version");
  EXPECT_EQ(r.code, 0);
  EXPECT_FALSE(r.out.empty());
}

}  // namespace
