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

#include "gaussdp/denoise.h"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "gaussdp/gauss_num.h"
#include "gaussdp/mechanism.h"
#include "gaussdp/rng.h"

namespace gaussdp {
namespace {

Release GaussianRelease(std::vector<double> values, double sigma) {
  return Release{std::move(values), sigma, MechanismKind::kAnalyticGaussian,
                 0};
}

// Mean and standard error of per-trial squared errors.
struct MonteCarloRisk {
  double mean = 0.0;
  double std_error = 0.0;
};

class RiskAccumulator {
 public:
  void Add(double loss) {
    ++n_;
    sum_ += loss;
    sum2_ += loss * loss;
  }
  MonteCarloRisk Result() const {
    const double mean = sum_ / n_;
    const double var = (sum2_ - n_ * mean * mean) / (n_ - 1);
    return {mean, std::sqrt(var / n_)};
  }

 private:
  int64_t n_ = 0;
  double sum_ = 0.0;
  double sum2_ = 0.0;
};

double SquaredError(const std::vector<double>& a,
                    const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

TEST(BayesTest, EqualVarianceHalves) {
  const Release r = GaussianRelease({4.0, -2.0, 1.0}, 1.5);
  EXPECT_EQ(*DenoiseBayesGaussianPrior(r, 2.25),
            (std::vector<double>{2.0, -1.0, 0.5}));
}

TEST(BayesTest, FlatPriorLimit) {
  const Release r = GaussianRelease({3.0, -7.25, 1e-3}, 2.0);
  const std::vector<double> out = *DenoiseBayesGaussianPrior(r, 4.0e12);
  for (size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(out[i], r.values[i], 1e-10 * std::abs(r.values[i]));
  }
}

TEST(BayesTest, ShrinkageFactor) {
  EXPECT_NEAR((*DenoiseBayesGaussianPrior(GaussianRelease({5.0}, 2.0), 1.0))[0],
              1.0, 1e-15);
}

TEST(BayesTest, Errors) {
  const Release r = GaussianRelease({1.0}, 1.0);
  EXPECT_EQ(DenoiseBayesGaussianPrior(r, 0.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(DenoiseBayesGaussianPrior(r, -1.0).ok());
  EXPECT_FALSE(DenoiseBayesGaussianPrior(r, NAN).ok());
}

TEST(BayesTest, ZeroSigmaIsIdentity) {
  const Release r = GaussianRelease({1.0, 2.0}, 0.0);
  EXPECT_EQ(*DenoiseBayesGaussianPrior(r, 3.0), r.values);
}

TEST(JamesSteinTest, ZeroSigmaIsIdentity) {
  const Release r = GaussianRelease({1.0, 2.0, 3.0}, 0.0);
  EXPECT_EQ(*DenoiseJamesStein(r), r.values);
}

TEST(JamesSteinTest, WorkedExample) {
  const Release r = GaussianRelease({2.0, 0.0, 0.0, 0.0, 0.0}, 1.0);
  EXPECT_EQ(*DenoiseJamesStein(r),
            (std::vector<double>{0.5, 0.0, 0.0, 0.0, 0.0}));
}

TEST(JamesSteinTest, FactorVanishes) {
  // ||y||^2 = 4 = (d - 2) sigma^2 with d = 6, sigma = 1.
  const Release r = GaussianRelease({1.0, 1.0, 1.0, 1.0, 0.0, 0.0}, 1.0);
  const std::vector<double> out = *DenoiseJamesStein(r);
  for (double v : out) EXPECT_EQ(v, 0.0);
}

TEST(JamesSteinTest, NegativeFactorAndPositivePart) {
  const Release r = GaussianRelease({0.5, 0.0, 0.0}, 1.0);
  // Factor 1 - 1 / 0.25 = -3.
  EXPECT_EQ(*DenoiseJamesStein(r), (std::vector<double>{-1.5, 0.0, 0.0}));
  EXPECT_EQ(*DenoiseJamesStein(r, {.positive_part = true}),
            (std::vector<double>{0.0, 0.0, 0.0}));
}

TEST(JamesSteinTest, Errors) {
  const absl::Status low_d =
      DenoiseJamesStein(GaussianRelease({1.0, 2.0}, 1.0)).status();
  EXPECT_EQ(low_d.code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(low_d.message().find("d >= 3"), std::string::npos);
  EXPECT_EQ(DenoiseJamesStein(GaussianRelease({0.0, 0.0, 0.0}, 1.0))
                .status()
                .code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(SoftThresholdTest, DefaultLambda) {
  EXPECT_DOUBLE_EQ(DefaultSoftThreshold(2.0, 1000),
                   2.0 * std::sqrt(2.0 * std::log(1000.0)));
  EXPECT_EQ(DefaultSoftThreshold(2.0, 1), 0.0);
}

TEST(SoftThresholdTest, WorkedExample) {
  EXPECT_EQ(*DenoiseSoftThreshold(GaussianRelease({3.0, -0.5}, 1.0), 1.0),
            (std::vector<double>{2.0, 0.0}));
  EXPECT_EQ(*DenoiseSoftThreshold(GaussianRelease({-3.0, 0.5}, 1.0), 1.0),
            (std::vector<double>{-2.0, 0.0}));
}

TEST(SoftThresholdTest, ZeroVectorAndKillZone) {
  const std::vector<double> zero =
      *DenoiseSoftThreshold(GaussianRelease({0.0, 0.0}, 1.0));
  for (double v : zero) EXPECT_EQ(v, 0.0);
  const std::vector<double> killed = *DenoiseSoftThreshold(
      GaussianRelease({0.9, -1.0, 0.0, 0.3}, 1.0), 1.0);
  for (double v : killed) EXPECT_EQ(v, 0.0);
}

TEST(SoftThresholdTest, ZeroSigmaUsesZeroLambda) {
  const Release r = GaussianRelease({1.0, -2.0, 3.0}, 0.0);
  EXPECT_EQ(*DenoiseSoftThreshold(r), r.values);
}

TEST(SoftThresholdTest, Errors) {
  const Release r = GaussianRelease({1.0}, 1.0);
  EXPECT_FALSE(DenoiseSoftThreshold(r, 0.0).ok());
  EXPECT_FALSE(DenoiseSoftThreshold(r, -1.0).ok());
}

// Property: at the default threshold, scaling (values, sigma) by c scales the
// output by c.
TEST(SoftThresholdTest, ScaleEquivariance) {
  Rng rng(99);
  std::vector<double> y(200);
  for (double& v : y) v = 3.0 * rng.StandardNormal();
  const std::vector<double> base = *DenoiseSoftThreshold(GaussianRelease(y, 1.3));
  for (double c : {0.25, 2.0, 1e3}) {
    std::vector<double> scaled = y;
    for (double& v : scaled) v *= c;
    const std::vector<double> out =
        *DenoiseSoftThreshold(GaussianRelease(scaled, 1.3 * c));
    for (size_t i = 0; i < y.size(); ++i) {
      EXPECT_NEAR(out[i], c * base[i], 1e-12 * c * (1.0 + std::abs(y[i])));
    }
  }
}

TEST(DenoiseTest, DeterministicAndDispatch) {
  const Release r = *PerturbGaussian(std::vector<double>(30, 0.5), 1.0, 11);
  EXPECT_EQ(*Denoise(r, BayesGaussianPrior{2.0}),
            *DenoiseBayesGaussianPrior(r, 2.0));
  EXPECT_EQ(*Denoise(r, JamesStein{}), *DenoiseJamesStein(r));
  EXPECT_EQ(*Denoise(r, JamesStein{{.positive_part = true}}),
            *DenoiseJamesStein(r, {.positive_part = true}));
  EXPECT_EQ(*Denoise(r, SoftThreshold{}), *DenoiseSoftThreshold(r));
  EXPECT_EQ(*Denoise(r, SoftThreshold{0.7}), *DenoiseSoftThreshold(r, 0.7));
  EXPECT_EQ(*DenoiseJamesStein(r), *DenoiseJamesStein(r));
}

TEST(EstimateMseTest, Examples) {
  const std::vector<double> truth = {1.0, 2.0, 3.0};
  const std::vector<std::vector<double>> same(4, truth);
  EXPECT_EQ(*EstimateMse(truth, same), 0.0);
  const std::vector<std::vector<double>> one = {{2.0, 2.0, 3.0}};
  EXPECT_EQ(*EstimateMse(truth, one), 1.0);
}

TEST(EstimateMseTest, Errors) {
  const std::vector<double> truth = {1.0, 2.0};
  EXPECT_FALSE(EstimateMse(truth, {}).ok());
  const std::vector<std::vector<double>> bad = {{1.0}};
  EXPECT_FALSE(EstimateMse(truth, bad).ok());
}

TEST(EstimateMseTest, PureNoise) {
  const std::vector<double> truth(10, 0.0);
  std::vector<std::vector<double>> estimates;
  for (uint64_t seed = 0; seed < 100000; ++seed) {
    estimates.push_back(PerturbGaussian(truth, 1.0, seed)->values);
  }
  EXPECT_NEAR(*EstimateMse(truth, estimates), 10.0, 0.2);
}

struct RiskConfig {
  int d;
  double w;
  double sigma;
};

class GaussianPriorRiskTest : public ::testing::TestWithParam<RiskConfig> {};

// f ~ N(0, w^2 I), y | f ~ N(f, sigma^2 I). The Bayes risk of the posterior
// mean is d w^2 sigma^2 / (w^2 + sigma^2). For plain James-Stein,
// ||y||^2 / (w^2 + sigma^2) is chi-square with d degrees of freedom, so
// E[1 / ||y||^2] = 1 / ((d - 2)(w^2 + sigma^2)) and Stein's identity gives
// risk d sigma^2 - (d - 2) sigma^4 / (w^2 + sigma^2).
TEST_P(GaussianPriorRiskTest, MonteCarloMatchesClosedForm) {
  const RiskConfig c = GetParam();
  const double w2 = c.w * c.w, s2 = c.sigma * c.sigma;
  Rng rng(DeriveSeed(2024, c.d));
  RiskAccumulator bayes, js, raw;
  std::vector<double> f(c.d);
  for (int trial = 0; trial < 20000; ++trial) {
    for (double& v : f) v = c.w * rng.StandardNormal();
    const Release r = *PerturbGaussian(f, c.sigma, rng.NextBits());
    bayes.Add(SquaredError(*DenoiseBayesGaussianPrior(r, w2), f));
    js.Add(SquaredError(*DenoiseJamesStein(r), f));
    raw.Add(SquaredError(r.values, f));
  }
  const MonteCarloRisk b = bayes.Result(), j = js.Result(), y = raw.Result();
  EXPECT_NEAR(b.mean, c.d * w2 * s2 / (w2 + s2), 3.0 * b.std_error);
  EXPECT_NEAR(j.mean, c.d * s2 - (c.d - 2) * s2 * s2 / (w2 + s2),
              3.0 * j.std_error);
  EXPECT_NEAR(y.mean, c.d * s2, 3.0 * y.std_error);
  EXPECT_LT(j.mean, y.mean);
  EXPECT_LE(b.mean, j.mean + 3.0 * j.std_error);
}

INSTANTIATE_TEST_SUITE_P(Configs, GaussianPriorRiskTest,
                         ::testing::Values(RiskConfig{10, 1.0, 1.0},
                                           RiskConfig{50, 2.0, 1.0},
                                           RiskConfig{100, 1.0, 3.0}));

// Property: James-Stein beats the raw release for fixed means of several
// sizes, including means far from the origin.
TEST(JamesSteinTest, DominatesRawForFixedMeans) {
  for (double scale : {0.0, 0.5, 3.0}) {
    std::vector<double> f(20);
    for (size_t i = 0; i < f.size(); ++i) f[i] = scale * (i % 3);
    RiskAccumulator js, raw;
    for (uint64_t seed = 0; seed < 10000; ++seed) {
      const Release r = *PerturbGaussian(f, 1.0, seed);
      js.Add(SquaredError(*DenoiseJamesStein(r), f));
      raw.Add(SquaredError(r.values, f));
    }
    EXPECT_LT(js.Result().mean, raw.Result().mean) << "scale " << scale;
  }
}

// Sparse mean with s large entries at 10 lambda. Each large entry costs
// sigma^2 + lambda^2, and each zero entry costs
// 2 sigma^2 ((1 + lambda^2) Phi(-lambda) - lambda phi(lambda)) with lambda in
// noise units, so the risk grows with s rather than with d.
TEST(SoftThresholdTest, SparseRecoveryRisk) {
  const int d = 1000, s = 10;
  const double sigma = 1.0;
  const double lambda = DefaultSoftThreshold(sigma, d);
  std::vector<double> f(d, 0.0);
  for (int i = 0; i < s; ++i) f[i] = (i % 2 ? -10.0 : 10.0) * lambda;
  RiskAccumulator th;
  for (uint64_t seed = 0; seed < 10000; ++seed) {
    const Release r = *PerturbGaussian(f, sigma, seed);
    th.Add(SquaredError(*DenoiseSoftThreshold(r), f));
  }
  const double pdf = std::exp(-0.5 * lambda * lambda) /
                     std::sqrt(2.0 * std::numbers::pi);
  const double zero_risk =
      2.0 * ((1.0 + lambda * lambda) * internal::Phi(-lambda) - lambda * pdf);
  const double expected =
      s * (1.0 + lambda * lambda) + (d - s) * zero_risk;
  const MonteCarloRisk m = th.Result();
  EXPECT_NEAR(m.mean, expected, 3.0 * m.std_error);
  EXPECT_LT(m.mean, 0.2 * d * sigma * sigma);
}

}  // namespace
}  // namespace gaussdp
