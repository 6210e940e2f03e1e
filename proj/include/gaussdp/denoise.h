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

#ifndef GAUSSDP_DENOISE_H_
#define GAUSSDP_DENOISE_H_

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "gaussdp/mechanism.h"

namespace gaussdp {

// Posterior mean under the prior f(x) ~ N(0, w2 I): scales the release by
// w2 / (w2 + sigma^2). A sigma = 0 release is returned unchanged.
absl::StatusOr<std::vector<double>> DenoiseBayesGaussianPrior(
    const Release& release, double w2);

struct JamesSteinOptions {
  // Clamp the shrinkage factor at zero. The plain estimator (false) is the
  // one whose risk has the closed form used in the tests.
  bool positive_part = false;
};

// (1 - (d - 2) sigma^2 / ||y||^2) y. Needs d >= 3 and, unless sigma = 0, a
// nonzero release.
absl::StatusOr<std::vector<double>> DenoiseJamesStein(
    const Release& release, const JamesSteinOptions& options = {});

// sigma * sqrt(2 ln d); zero for d = 1.
double DefaultSoftThreshold(double sigma, size_t d);

// sign(y) max(0, |y| - lambda) per coordinate, lambda defaulting to
// DefaultSoftThreshold(release.sigma, d).
absl::StatusOr<std::vector<double>> DenoiseSoftThreshold(
    const Release& release, std::optional<double> lambda = std::nullopt);

struct BayesGaussianPrior {
  double w2 = 1.0;
};
struct JamesStein {
  JamesSteinOptions options;
};
struct SoftThreshold {
  std::optional<double> lambda;
};
using DenoiserChoice = std::variant<BayesGaussianPrior, JamesStein,
                                    SoftThreshold>;

absl::StatusOr<std::vector<double>> Denoise(const Release& release,
                                            const DenoiserChoice& choice);

// Mean over estimates of ||estimate - truth||_2^2.
absl::StatusOr<double> EstimateMse(
    std::span<const double> truth,
    std::span<const std::vector<double>> estimates);

}  // namespace gaussdp

#endif  // GAUSSDP_DENOISE_H_
