// Copyright 2026 The Authors.
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

// Runs the built binary and checks its reports.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "prefalloc/instances.hpp"

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult Cli(const std::string& args) {
  const std::string cmd = std::string(PREFALLOC_CLI) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buffer[4096];
  size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, got);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string Data(const std::string& name) {
  return std::string(PREFALLOC_TEST_DATA) + "/" + name;
}

std::filesystem::path Scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "prefalloc_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string Field(const std::string& out, const std::string& key) {
  const auto at = out.find(" " + key + "=");
  if (at == std::string::npos) return "";
  const auto start = at + key.size() + 2;
  return out.substr(start, out.find_first_of(" \n", start) - start);
}

TEST(CliGenTest, WritesFileAndDigest) {
  const auto path = Scratch("ic.txt");
  const CliResult a = Cli("gen ic 10 5 --seed 7 --out " + path.string());
  ASSERT_EQ(a.status, 0) << a.out;
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto doc = prefalloc::parse_instance(text.str());
  EXPECT_EQ(doc.profile.num_agents(), 10);
  EXPECT_EQ(doc.profile.num_alternatives(), 5);
  const CliResult b = Cli("gen ic 10 5 --seed 7 --out " + path.string());
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("digest="), std::string::npos);

  const auto ident = Scratch("ident.txt");
  ASSERT_EQ(Cli("gen identical 4 3 --out " + ident.string()).status, 0);
  std::ifstream in2(ident);
  std::stringstream t2;
  t2 << in2.rdbuf();
  EXPECT_EQ(t2.str(), "4 3\n1 2 3\n1 2 3\n1 2 3\n1 2 3\n");
}

TEST(CliGenTest, Errors) {
  EXPECT_NE(Cli("gen ic 10 5 --out " + Scratch("x.txt").string()).status, 0);
  EXPECT_NE(Cli("gen identical 4 3 --out /nonexistent/dir/x.txt").status, 0);
}

TEST(CliSolveTest, TightInstance) {
  const CliResult r = Cli("solve --in " + Data("identical_12x8.txt") +
                    " --system monroe --k 4 --algorithm exact --objective l1_dec");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(Field(r.out, "value"), "66");
  EXPECT_NE(r.out.find("\ncommittee: 1 2 3 4\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\ntargets: "), std::string::npos);
}

TEST(CliSolveTest, CCFullCommittee) {
  // K = m: every agent gets its first choice, n (m - 1).
  const CliResult r = Cli("solve --in " + Data("small_cc.txt") + " --system cc --k 3 --algorithm greedy");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(Field(r.out, "value"), "6");
  EXPECT_FALSE(Field(r.out, "bound").empty());
}

TEST(CliSolveTest, CombinedNotesBranch) {
  const auto path = Scratch("m4.txt");
  ASSERT_EQ(Cli("gen ic 8 4 --seed 3 --out " + path.string()).status, 0);
  const CliResult r = Cli("solve --in " + path.string() +
                    " --system monroe --k 2 --algorithm combined --epsilon 0.5 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(Field(r.out, "branch").rfind("exact", 0), 0u) << r.out;
}

TEST(CliSolveTest, ReproducibleAndTimingOptIn) {
  const std::string args = "solve --in " + Data("identical_12x8.txt") +
                           " --system monroe --k 3 --algorithm sample --seed 9";
  const CliResult a = Cli(args);
  const CliResult b = Cli(args);
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("elapsed_ms"), std::string::npos);
  EXPECT_NE(Cli("--timing " + args).out.find("elapsed_ms="), std::string::npos);
}

TEST(CliSolveTest, InconsistentFlags) {
  const std::string in = " --in " + Data("small_cc.txt");
  EXPECT_NE(Cli("solve" + in + " --system monroe --k 2 --algorithm sample").status, 0);
  EXPECT_NE(Cli("solve" + in + " --system monroe --k 2 --algorithm maxcover").status, 0);
  EXPECT_NE(Cli("solve" + in + " --system monroe --k 9 --algorithm exact").status, 0);
}

TEST(CliSolveTest, CapErrorExitsNonzero) {
  const CliResult r = Cli("solve --in " + Data("identical_12x8.txt") +
                    " --system monroe --k 4 --algorithm exact --cap 10");
  EXPECT_NE(r.status, 0);
}

TEST(CliSolveTest, GeneralInstance) {
  const CliResult r = Cli("solve --in " + Data("general.txt") + " --system general --k 2 --algorithm exact");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_FALSE(Field(r.out, "value").empty());
}

TEST(CliSolveTest, Json) {
  const CliResult r = Cli("--json solve --in " + Data("identical_12x8.txt") +
                    " --system monroe --k 4 --algorithm exact");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("\"value\":66"), std::string::npos) << r.out;
}

TEST(CliRatioTest, GreedyCCAboveBound) {
  const CliResult r = Cli("ratio --gen ic --n 12 --m 6 --system cc --k 3 --algorithms greedy "
                    "--trials 100 --seed 5");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto at = r.out.find("summary algorithm=greedy");
  ASSERT_NE(at, std::string::npos);
  EXPECT_GE(std::stod(Field(r.out.substr(at - 1), "min_ratio")), 0.400);
  EXPECT_NE(r.out.find("violations=0"), std::string::npos);
}

TEST(CliRatioTest, ExactAgainstItself) {
  const CliResult r = Cli("ratio --gen ic --n 8 --m 5 --system monroe --k 2 --algorithms exact,greedy "
                    "--trials 5 --seed 1");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("summary algorithm=exact min_ratio=1.000000"), std::string::npos) << r.out;
}

TEST(CliRatioTest, CapErrorRow) {
  const CliResult r = Cli("ratio --gen ic --n 8 --m 8 --system monroe --k 4 --algorithms greedy "
                    "--trials 2 --seed 1 --cap 3");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.out.find("error="), std::string::npos) << r.out;
}

TEST(CliEvalTest, Metrics) {
  const CliResult r = Cli("eval --in " + Data("small_cc.txt") + " --system cc --k 2 --targets 1 1 3");
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(Field(r.out, "l1"), "5");
  EXPECT_EQ(Field(r.out, "min"), "1");
  const CliResult bad = Cli("eval --in " + Data("small_cc.txt") +
                      " --system monroe --k 1 --targets 1 2 3");
  EXPECT_NE(bad.status, 0);
}

}  // namespace
