// Copyright 2026 The qrd Authors
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
#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qrd/qrd.hpp"

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = qrd::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(QRD_SAMPLES_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("qrd_cli_test_" + name)).string();
}

}  // namespace

TEST(Cli, HelpExitsZero) {
  Outcome r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("isotropic"), std::string::npos);
}

TEST(Cli, MissingSubcommandIsUsageError) {
  EXPECT_EQ(run({}).code, qrd::cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, qrd::cli::kUsage);
  EXPECT_EQ(run({"isotropic", "--n", "eight"}).code, qrd::cli::kUsage);
}

TEST(Cli, IsotropicReferenceRow) {
  Outcome r = run({"isotropic", "--n", "8", "--D", "0.25", "--eps", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("converse_qubits_per_symbol"), std::string::npos);
  EXPECT_NE(r.out.find(",0.49198"), std::string::npos) << r.out;
}

TEST(Cli, IsotropicRejectsBadDistortion) {
  Outcome r = run({"isotropic", "--n", "8", "--D", "1.5"});
  EXPECT_EQ(r.code, qrd::cli::kUsage);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, EntropyDmaxOfPureAgainstMixed) {
  Outcome r = run({"entropy", "--op", "dmax", "--rho", sample("ket0.json"), "--sigma", sample("mixed.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  qrd::io::Json j = qrd::io::Json::parse(r.out);
  EXPECT_NEAR(j.at("value_bits").get<double>(), 1.0, 1e-12);
}

TEST(Cli, EntropyNeedsSigma) {
  Outcome r = run({"entropy", "--op", "dmax", "--rho", sample("ket0.json")});
  EXPECT_EQ(r.code, qrd::cli::kUsage);
  EXPECT_NE(r.err.find("--sigma"), std::string::npos);
}

TEST(Cli, MalformedFileNamesPathAndField) {
  Outcome r = run({"entropy", "--op", "vn", "--rho", sample("malformed.json")});
  EXPECT_EQ(r.code, qrd::cli::kUsage);
  EXPECT_NE(r.err.find("malformed.json"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("dims"), std::string::npos) << r.err;
  Outcome missing = run({"entropy", "--op", "vn", "--rho", sample("no_such_file.json")});
  EXPECT_EQ(missing.code, qrd::cli::kUsage);
  EXPECT_NE(missing.err.find("no_such_file.json"), std::string::npos);
}

TEST(Cli, ValidateLemma1) {
  Outcome r = run({"validate", "--suite", "lemma1", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("lemma1 100/100 pass"), std::string::npos) << r.out;
  EXPECT_EQ(run({"validate", "--suite", "nope"}).code, qrd::cli::kUsage);
}

TEST(Cli, BoundsRateForBellSource) {
  Outcome r = run({"bounds", "--bound", "rate", "--D", "0.25", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  qrd::io::Json j = qrd::io::Json::parse(r.out);
  // Maximally mixed qubit with entanglement-fidelity distortion.
  double expected = 1.0 - 0.5 * (qrd::h2(0.25) + 0.25 * std::log2(3.0));
  EXPECT_NEAR(j.at(0).at("value_qubits").get<double>(), expected, 1e-3);
}

TEST(Cli, BoundsCsvColumns) {
  Outcome r = run({"bounds", "--bound", "converse_simple", "--D", "0.1", "--eps", "0.01", "--eps-prime", "0.05"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("provenance,direction,validity,D,eps,eps_prime,n,value_qubits", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("conditional"), std::string::npos);
}

TEST(Cli, BoundsRejectChannelAboveExcessBudget) {
  // One use of a depolarizing channel errs with probability 0.15 > eps.
  Outcome r = run({"bounds", "--bound", "converse_simple", "--D", "0.1", "--eps", "0.01", "--eps-prime", "0.05",
                   "--channel", sample("depolarizing.json")});
  EXPECT_EQ(r.code, qrd::cli::kUsage);
  EXPECT_NE(r.err.find("eps"), std::string::npos);
  Outcome ok = run({"bounds", "--bound", "embezzling", "--D", "0.2", "--eps", "0.9", "--channel",
                    sample("depolarizing.json"), "--format", "json"});
  EXPECT_EQ(ok.code, 0) << ok.err;
}

TEST(Cli, SimulateConfigAndOverride) {
  Outcome a = run({"simulate", "--config", sample("simulate.json"), "--trials", "2000"});
  ASSERT_EQ(a.code, 0) << a.err;
  qrd::io::Json j = qrd::io::Json::parse(a.out);
  EXPECT_EQ(j.at("trials").get<std::size_t>(), 2000u);
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 2026u);
  EXPECT_NEAR(j.at("target").get<double>(), 0.014470, 5e-6);
  Outcome b = run({"--threads", "3", "simulate", "--config", sample("simulate.json"), "--trials", "2000"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SimulateRejectsHugeCodebook) {
  Outcome r = run({"simulate", "--n", "1024", "--M", "1048576", "--trials", "1"});
  EXPECT_EQ(r.code, qrd::cli::kUsage);
}

TEST(Cli, RerunsAreByteIdentical) {
  std::string p1 = temp_path("a.csv"), p2 = temp_path("b.csv");
  ASSERT_EQ(run({"isotropic", "--n", "8", "16", "--D", "0.1", "0.25", "--out", p1}).code, 0);
  ASSERT_EQ(run({"isotropic", "--n", "8", "16", "--D", "0.1", "0.25", "--out", p2}).code, 0);
  std::string a = slurp(p1), b = slurp(p2);
  // The first line names the manifest file, which differs by output name.
  EXPECT_EQ(a.substr(a.find('\n')), b.substr(b.find('\n')));
  EXPECT_EQ(a.rfind("# qrd ", 0), 0u);
  qrd::io::Json m = qrd::io::read_json(p1 + ".manifest.json");
  EXPECT_EQ(m.at("subcommand"), "isotropic");
  EXPECT_EQ(m.at("version"), qrd::kVersion);

  std::string s1 = temp_path("s1.csv"), s2 = temp_path("s2.csv");
  ASSERT_EQ(run({"simulate", "--n", "6", "--M", "50", "--trials", "500", "--seed", "4", "--histogram", s1}).code, 0);
  ASSERT_EQ(run({"simulate", "--n", "6", "--M", "50", "--trials", "500", "--seed", "4", "--histogram", s2}).code, 0);
  std::string h1 = slurp(s1), h2 = slurp(s2);
  EXPECT_EQ(h1.substr(h1.find('\n')), h2.substr(h2.find('\n')));
  for (const auto& p : {p1, p2, s1, s2}) {
    std::remove(p.c_str());
    std::remove((p + ".manifest.json").c_str());
  }
}
