/*
 * Copyright 2026 The textclf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Drives the installed command-line binary against the bundled data.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "json.hpp"
#include "test_support.hpp"

namespace textclf {
namespace {

namespace fs = std::filesystem;
using testing::read_file;
using testing::TempDir;

const fs::path kData = TEXTCLF_DATA_DIR;

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Result run_cli(const std::string& args) {
  TempDir scratch;
  const auto err_path = scratch / "stderr";
  const std::string cmd = quote(TEXTCLF_CLI_PATH) + " " + args + " 2>" + quote(err_path.string());
  Result r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = read_file(err_path);
  return r;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

TEST(CliBinary, NoArgumentsIsAUsageError) {
  const auto r = run_cli("");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliBinary, IngestBundledCorpus) {
  const auto r = run_cli("ingest --corpus " + quote((kData / "synthetic").string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("documents: 300"), std::string::npos);
  EXPECT_NE(r.out.find("poet_a\t60\t40\t100"), std::string::npos) << r.out;
}

TEST(CliBinary, MissingCorpusFails) {
  const auto r = run_cli("ingest --corpus /nonexistent/textclf");
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST(CliBinary, BundledSweepConfig) {
  TempDir dir;
  const auto r = run_cli("sweep --config " + quote((kData / "configs" / "synthetic_sweep.json").string()) +
                         " --output " + quote(dir.path().string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto csv = read_file(dir / "sweep.csv");
  ASSERT_EQ(count_lines(csv), 36u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "classifier,k,macro_f,accuracy,seconds");
  EXPECT_EQ(csv.find("NA"), std::string::npos);
  std::size_t reports = 0;
  for (const auto& e : fs::directory_iterator(dir / "reports")) reports += e.path().extension() == ".json";
  EXPECT_EQ(reports, 35u);
  const auto report = nlohmann::json::parse(read_file(dir / "reports" / "NB_k100.json"));
  EXPECT_GE(report.at("macro_f").get<double>(), 0.9);
}

TEST(CliBinary, TrainPredictEvaluateRoundTrip) {
  TempDir dir;
  const auto corpus = quote((kData / "synthetic").string());
  const auto model = quote((dir / "model.json").string());
  auto r = run_cli("train --corpus " + corpus + " --classifier NB -k 100 --model " + model);
  ASSERT_EQ(r.exit_code, 0) << r.err;

  const auto doc_a = (kData / "synthetic" / "poet_a" / "doc0000.txt").string();
  const auto doc_c = (kData / "synthetic" / "poet_c" / "doc0005.txt").string();
  r = run_cli("predict --model " + model + " " + quote(doc_a) + " " + quote(doc_c));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, doc_a + "\tpoet_a\n" + doc_c + "\tpoet_c\n");

  r = run_cli("evaluate --model " + model + " --corpus " + corpus);
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto report = nlohmann::json::parse(r.out);
  EXPECT_GE(report.at("macro_f").get<double>(), 0.9);

  r = run_cli("predict --model " + model + " /nonexistent/doc.txt");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("/nonexistent/doc.txt"), std::string::npos);
}

TEST(CliBinary, RankToStdout) {
  const auto r = run_cli("rank --corpus " + quote((kData / "synthetic").string()));
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 561u);
}

}  // namespace
}  // namespace textclf
