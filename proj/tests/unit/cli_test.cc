/*
 * Copyright 2026 The Graphleak Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "graphleak/csv_util.h"
#include "support/toy_graphs.h"

namespace graphleak {
namespace {

namespace fs = std::filesystem;
using testing::TempDir;

const std::string kConfig = std::string(GRAPHLEAK_TEST_DATA_DIR) + "/tiny.json";

int RunCli(const std::string& args) {
  const std::string cmd = std::string(GRAPHLEAK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

size_t CountFiles(const fs::path& dir) {
  if (!fs::exists(dir)) return 0;
  size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.is_regular_file();
  return n;
}

TEST(CliTest, AttackWritesOutputsDeterministically) {
  TempDir a("cli"), b("cli");
  ASSERT_EQ(RunCli("attack --config " + kConfig + " --out " + a.path().string() + " --quiet"), 0);
  ASSERT_EQ(RunCli("attack --config " + kConfig + " --out " + b.path().string() + " --quiet"), 0);
  const std::string ledger = ReadFile(a.path() / "ledger.json");
  EXPECT_EQ(ledger, ReadFile(b.path() / "ledger.json"));
  const auto j = nlohmann::json::parse(ledger);
  EXPECT_EQ(j.at("command"), "attack");
  EXPECT_EQ(j.at("runs").size(), 4u);
  EXPECT_TRUE(fs::exists(a.path() / "tables" / "attack.csv"));
  EXPECT_EQ(CountFiles(a.path() / "traces"), 2u);
  EXPECT_EQ(CountFiles(a.path() / "pca"), 4u);
  for (const auto& e : fs::recursive_directory_iterator(a.path())) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), a.path());
    EXPECT_EQ(ReadFile(e.path()), ReadFile(b.path() / rel)) << rel;
  }
}

TEST(CliTest, SeedsOverrideAndStats) {
  TempDir out("cli");
  ASSERT_EQ(RunCli("stats --config " + kConfig + " --out " + out.path().string() +
                " --seeds 4 --samples 5000 --quiet"),
            0);
  const auto j = nlohmann::json::parse(ReadFile(out.path() / "ledger.json"));
  EXPECT_EQ(j.at("config").at("seeds"), nlohmann::json::array({4}));
  EXPECT_EQ(j.at("pair_stats").size(), 2u);
  EXPECT_TRUE(fs::exists(out.path() / "tables" / "pair_stats.csv"));
}

TEST(CliTest, ErrorsGiveNonZeroExit) {
  TempDir out("cli");
  EXPECT_NE(RunCli("attack --config /nonexistent.json"), 0);
  EXPECT_NE(RunCli("bogus --config " + kConfig), 0);
  EXPECT_EQ(RunCli("attack --config " + kConfig + " --out " + out.path().string() +
                " --seeds x"),
            1);
  EXPECT_NE(RunCli("ablation --config " + kConfig + " --sweep nope"), 0);
  const fs::path bad = out.path() / "bad.json";
  WriteFile(bad, R"({"synthetic": {}, "typo": 1})");
  EXPECT_EQ(RunCli("attack --config " + bad.string()), 2);
}

}  // namespace
}  // namespace graphleak
