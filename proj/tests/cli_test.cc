//
// Copyright 2026 The gaussdp Authors
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
//

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "gaussdp/calibrate.h"
#include "gaussdp/report.h"
#include "json.hpp"

namespace gaussdp::cli {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

struct Invocation {
  int code = -1;
  std::string out;
  std::string err;
};

Invocation Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Invocation result;
  result.code = RunCli(args, out, err);
  result.out = out.str();
  result.err = err.str();
  return result;
}

std::string Slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("gaussdp_cli_" +
            std::string(
                ::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }
  std::string Path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
};

Json RunJson(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Invocation r = Invoke(args);
  EXPECT_EQ(r.code, kExitOk) << r.err;
  return Json::parse(r.out);
}

TEST_F(CliTest, CalibrateAtBranchBoundary) {
  const Json j = RunJson({"calibrate", "--mechanism", "analytic", "--epsilon",
                          "1", "--delta", "0.28620821192209649779",
                          "--sensitivity", "1"});
  EXPECT_NEAR(j["sigma"].get<double>(), 0.7071067812, 5e-11);
  EXPECT_NEAR(j["alpha"].get<double>(), 1.0, 1e-9);
}

TEST_F(CliTest, CalibrateClassical) {
  const Json j = RunJson({"calibrate", "--mechanism", "classical",
                          "--epsilon", "0.5", "--delta", "1e-5",
                          "--sensitivity", "1"});
  EXPECT_NEAR(j["sigma"].get<double>(), 9.68961, 5e-6);
  EXPECT_EQ(j["branch"], "classical_formula");
}

TEST_F(CliTest, CalibrateClassicalOutsideDomain) {
  const Invocation r = Invoke({"calibrate", "--mechanism", "classical",
                            "--epsilon", "2", "--delta", "1e-5"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("(0, 1)"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, CalibrateMatchesLibrary) {
  const Json j = RunJson({"calibrate", "--epsilon", "0.3", "--delta", "1e-7",
                          "--sensitivity", "2.5"});
  const CalibrationResult lib = *CalibrateAnalytic({0.3, 1e-7}, 2.5);
  EXPECT_EQ(j["sigma"].get<double>(), lib.sigma);
  EXPECT_EQ(j["achieved_delta"].get<double>(), lib.achieved_delta);
  EXPECT_EQ(j["branch"], std::string(BranchName(lib.branch)));
}

TEST_F(CliTest, CalibrateLaplace) {
  const Json j = RunJson({"calibrate", "--mechanism", "laplace", "--epsilon",
                          "0.5", "--sensitivity", "2"});
  EXPECT_EQ(j["sigma"].get<double>(), 4.0);
}

TEST_F(CliTest, PlainAndCsvFormats) {
  const Invocation plain =
      Invoke({"calibrate", "--epsilon", "1", "--delta", "1e-5"});
  EXPECT_EQ(plain.code, kExitOk);
  EXPECT_EQ(plain.out.rfind("mechanism: analytic\nsigma: ", 0), 0u);
  const Invocation csv = Invoke(
      {"calibrate", "--epsilon", "1", "--delta", "1e-5", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("mechanism,sigma,alpha,branch,", 0), 0u);
}

TEST_F(CliTest, ProfileAtBoundary) {
  const Json j = RunJson({"profile", "--epsilon", "1", "--sigma",
                          "0.70710678118654752"});
  EXPECT_NEAR(j["achieved_delta"].get<double>(), 0.28620821192209649779,
              1e-14);
}

TEST_F(CliTest, ProfileRoundtrip) {
  for (const char* delta : {"1e-3", "1e-6", "1e-10"}) {
    const Json cal =
        RunJson({"calibrate", "--epsilon", "0.7", "--delta", delta});
    const Json prof =
        RunJson({"profile", "--epsilon", "0.7", "--sigma",
                 FormatDouble(cal["sigma"].get<double>())});
    EXPECT_LE(prof["achieved_delta"].get<double>(), std::stod(delta));
  }
}

TEST_F(CliTest, ProfileLargeSigma) {
  const Json j = RunJson({"profile", "--epsilon", "1", "--sigma", "1e6"});
  EXPECT_LT(j["achieved_delta"].get<double>(), 1e-6);
  EXPECT_EQ(Invoke({"profile", "--epsilon", "1", "--sigma", "0"}).code,
            kExitDomain);
}

TEST_F(CliTest, PerturbNoneIsExact) {
  const std::string input = Write("mean.txt", "# two records\n1, 0\n0 1\n");
  ASSERT_EQ(Invoke({"perturb", "-i", input, "--mechanism", "none", "-o",
                 Path("r.json")})
                .code,
            kExitOk);
  const Json release = Json::parse(Slurp(Path("r.json")));
  EXPECT_EQ(release["values"], Json::parse("[0.5, 0.5]"));
  EXPECT_EQ(release["sigma"].get<double>(), 0.0);
  EXPECT_EQ(release["d"], 2);

  const std::string labels = Write("labels.txt", "1\n1\n2\n");
  ASSERT_EQ(Invoke({"perturb", "-i", labels, "--query", "histogram", "--d", "3",
                 "--mechanism", "none", "-o", Path("h.json")})
                .code,
            kExitOk);
  const Json h = Json::parse(Slurp(Path("h.json")));
  EXPECT_DOUBLE_EQ(h["values"][0].get<double>(), 2.0 / 3.0);
  EXPECT_EQ(h["values"][2].get<double>(), 0.0);
}

TEST_F(CliTest, PerturbDeterministicAndConsistent) {
  const std::string input = Write("mean.txt", "0.1 0.2 0.3\n0.4 0.5 0.6\n");
  const std::vector<std::string> base = {
      "perturb", "-i", input, "--epsilon", "0.5", "--delta", "1e-5",
      "--seed",  "42"};
  auto with_output = [&](const std::string& name) {
    std::vector<std::string> args = base;
    args.push_back("-o");
    args.push_back(Path(name));
    return Invoke(args).code;
  };
  ASSERT_EQ(with_output("a.json"), kExitOk);
  ASSERT_EQ(with_output("b.json"), kExitOk);
  EXPECT_EQ(Slurp(Path("a.json")), Slurp(Path("b.json")));

  const Json release = Json::parse(Slurp(Path("a.json")));
  const Json cal =
      RunJson({"calibrate", "--epsilon", "0.5", "--delta", "1e-5",
               "--sensitivity",
               FormatDouble(release["sensitivity_l2"].get<double>())});
  EXPECT_EQ(release["sigma"].get<double>(), cal["sigma"].get<double>());
  EXPECT_EQ(release["seed"], 42);
}

TEST_F(CliTest, PerturbErrors) {
  EXPECT_EQ(Invoke({"perturb", "-i", Path("missing.txt"), "--mechanism", "none"})
                .code,
            kExitDomain);
  const std::string ragged = Write("ragged.txt", "1 2\n3\n");
  EXPECT_EQ(Invoke({"perturb", "-i", ragged, "--mechanism", "none"}).code,
            kExitDomain);
  const std::string junk = Write("junk.txt", "1 x\n");
  EXPECT_EQ(Invoke({"perturb", "-i", junk, "--mechanism", "none"}).code,
            kExitDomain);
  const std::string labels = Write("labels.txt", "1\n5\n");
  EXPECT_EQ(Invoke({"perturb", "-i", labels, "--query", "histogram", "--d", "3",
                 "--mechanism", "none"})
                .code,
            kExitDomain);
  const std::string good = Write("good.txt", "1 2\n");
  EXPECT_EQ(Invoke({"perturb", "-i", good, "--mechanism", "classical",
                 "--epsilon", "1.5", "--delta", "1e-5"})
                .code,
            kExitDomain);
  EXPECT_EQ(Invoke({"perturb", "-i", good, "--mechanism", "bogus"}).code,
            kExitDomain);
}

TEST_F(CliTest, DenoiseJamesSteinNeedsThreeDims) {
  const std::string input = Write("mean.txt", "1 2\n3 4\n");
  ASSERT_EQ(Invoke({"perturb", "-i", input, "--epsilon", "1", "--delta", "1e-5",
                 "-o", Path("r.json")})
                .code,
            kExitOk);
  const Invocation r =
      Invoke({"denoise", "-r", Path("r.json"), "--estimator", "js"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("d >= 3"), std::string::npos);
}

TEST_F(CliTest, DenoiseSoftOnZeroVector) {
  const std::string release = Write(
      "r.json",
      R"({"values":[0,0,0,0],"sigma":1.5,"mechanism":"analytic","seed":1,"d":4})");
  const Json j = RunJson({"denoise", "-r", release, "--estimator", "soft"});
  EXPECT_EQ(j["values"], Json::parse("[0.0, 0.0, 0.0, 0.0]"));
  EXPECT_DOUBLE_EQ(j["lambda"].get<double>(), 1.5 * std::sqrt(2 * std::log(4.0)));
}

TEST_F(CliTest, DenoiseBayesHalves) {
  const std::string release = Write(
      "r.json",
      R"({"values":[4,-2,1],"sigma":2,"mechanism":"analytic","seed":1,"d":3})");
  const Json j = RunJson(
      {"denoise", "-r", release, "--estimator", "bayes", "--w2", "4"});
  EXPECT_EQ(j["values"], Json::parse("[2.0, -1.0, 0.5]"));
  EXPECT_EQ(Invoke({"denoise", "-r", release, "--estimator", "bayes"}).code,
            kExitDomain);
}

TEST_F(CliTest, DenoiseRejectsBadReleases) {
  const std::string laplace = Write(
      "lap.json",
      R"({"values":[1,2,3],"sigma":1,"mechanism":"laplace","seed":1,"d":3})");
  EXPECT_EQ(Invoke({"denoise", "-r", laplace, "--estimator", "soft"}).code,
            kExitDomain);
  const std::string broken = Write("broken.json", "{not json");
  EXPECT_EQ(Invoke({"denoise", "-r", broken, "--estimator", "soft"}).code,
            kExitDomain);
  const std::string mismatch = Write(
      "mismatch.json",
      R"({"values":[1,2,3],"sigma":1,"mechanism":"analytic","seed":1,"d":4})");
  EXPECT_EQ(Invoke({"denoise", "-r", mismatch, "--estimator", "soft"}).code,
            kExitDomain);
}

TEST_F(CliTest, SweepSingletonAndDeterministic) {
  const Invocation a =
      Invoke({"bench-sweep", "--epsilons", "0.5", "--deltas", "1e-3"});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out,
            "epsilon,delta,sigma_classical,sigma_analytic,variance_gain\r\n"
            "0.5,0.001,7.552959065318094,4.610127950728139,"
            "2.6841594044937716\r\n");
  EXPECT_EQ(Invoke({"bench-sweep", "--epsilons", "0.5", "--deltas", "1e-3"}).out,
            a.out);
}

TEST_F(CliTest, SweepConfigFileAndOverride) {
  const std::string config = Write(
      "sweep.json", R"({"epsilons":[0.2,0.4],"deltas":[1e-4],"sensitivity":2})");
  const Invocation from_file = Invoke({"bench-sweep", "--config", config});
  ASSERT_EQ(from_file.code, kExitOk) << from_file.err;
  EXPECT_EQ(std::count(from_file.out.begin(), from_file.out.end(), '\n'), 3);
  const Invocation overridden =
      Invoke({"bench-sweep", "--config", config, "--epsilons", "0.3"});
  EXPECT_EQ(std::count(overridden.out.begin(), overridden.out.end(), '\n'), 2);
  EXPECT_EQ(overridden.out.find("0.2,"), std::string::npos);
  const Invocation jsonl = Invoke({"bench-sweep", "--config", config, "--format",
                                "jsonl"});
  EXPECT_EQ(jsonl.out.front(), '{');
}

TEST_F(CliTest, SweepValidation) {
  EXPECT_EQ(Invoke({"bench-sweep", "--epsilons", "-1", "--deltas", "1e-3"}).code,
            kExitDomain);
  EXPECT_EQ(Invoke({"bench-sweep", "--epsilons", "0.5", "--deltas", "2"}).code,
            kExitDomain);
  const std::string bad = Write("bad.json", R"({"epsilons":"oops"})");
  EXPECT_EQ(Invoke({"bench-sweep", "--config", bad}).code, kExitDomain);
}

TEST_F(CliTest, EstimateDeterministicRecords) {
  const std::vector<std::string> args = {
      "bench-estimate", "--task", "histogram", "--n", "200", "--d", "5,50",
      "--epsilon", "0.5", "--trials", "3", "--methods",
      "cGM,aGM,aGM-JS,aGM-TH,Lap,none", "--seed", "9"};
  const Invocation a = Invoke(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, Invoke(args).out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 1 + 6 * 2 * 3);
  EXPECT_EQ(a.out.rfind("method,d,epsilon,delta,trial,", 0), 0u);

  std::vector<std::string> summary = args;
  summary.push_back("--summary");
  const Invocation s = Invoke(summary);
  EXPECT_EQ(s.code, kExitOk);
  EXPECT_EQ(std::count(s.out.begin(), s.out.end(), '\n'), 1 + 6 * 2);
}

TEST_F(CliTest, EstimateConfigFile) {
  const std::string config = Write(
      "est.json",
      R"({"task":"mean","n":50,"d":[4],"epsilon":0.5,"trials":2,"methods":["aGM"],"seed":3})");
  const Invocation a = Invoke({"bench-estimate", "--config", config});
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 3);
  const Invocation b =
      Invoke({"bench-estimate", "--config", config, "--trials", "5"});
  EXPECT_EQ(std::count(b.out.begin(), b.out.end(), '\n'), 6);
}

TEST_F(CliTest, EstimateValidation) {
  EXPECT_EQ(Invoke({"bench-estimate", "--d", "2", "--epsilon", "0.5",
                 "--methods", "aGM-JS"})
                .code,
            kExitDomain);
  EXPECT_EQ(Invoke({"bench-estimate", "--d", "10", "--epsilon", "1",
                 "--methods", "cGM"})
                .code,
            kExitDomain);
  EXPECT_EQ(Invoke({"bench-estimate", "--d", "10", "--epsilon", "0.5",
                 "--methods", "xyz"})
                .code,
            kExitDomain);
  EXPECT_EQ(Invoke({"bench-estimate", "--d", "10", "--epsilon", "0.5",
                 "--trials", "0", "--methods", "aGM"})
                .code,
            kExitDomain);
}

TEST_F(CliTest, ExitCodeContract) {
  EXPECT_EQ(Invoke({}).code, kExitDomain);
  EXPECT_EQ(Invoke({"frobnicate"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"calibrate"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"calibrate", "--epsilon", "abc"}).code, kExitDomain);
  EXPECT_EQ(Invoke({"calibrate", "--epsilon", "1", "--delta", "0"}).code,
            kExitDomain);
  EXPECT_EQ(Invoke({"calibrate", "--epsilon", "1", "--delta", "1e-5",
                 "--format", "yaml"})
                .code,
            kExitDomain);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
  // The privacy profile cancels to zero in double precision at this epsilon,
  // so no bracket exists within the doubling cap.
  const Invocation numerical =
      Invoke({"calibrate", "--epsilon", "1e-300", "--delta", "0.1"});
  EXPECT_EQ(numerical.code, kExitNumerical);
  EXPECT_FALSE(numerical.err.empty());
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ASSERT_EQ(setenv(kOutputDirEnv, dir_.c_str(), 1), 0);
  const Invocation r = Invoke({"bench-sweep", "--epsilons", "0.5", "--deltas",
                            "1e-3", "-o", "sweep.csv"});
  unsetenv(kOutputDirEnv);
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(Slurp(dir_ / "sweep.csv"),
            Invoke({"bench-sweep", "--epsilons", "0.5", "--deltas", "1e-3"}).out);
  // Absolute paths ignore the variable.
  ASSERT_EQ(setenv(kOutputDirEnv, "/nonexistent", 1), 0);
  EXPECT_EQ(Invoke({"calibrate", "--epsilon", "1", "--delta", "1e-5", "-o",
                 Path("cal.txt")})
                .code,
            kExitOk);
  unsetenv(kOutputDirEnv);
  EXPECT_FALSE(Slurp(Path("cal.txt")).empty());
}

}  // namespace
}  // namespace gaussdp::cli
