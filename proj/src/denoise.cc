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

#include "absl/strings/str_cat.h"

namespace gaussdp {
namespace {

absl::Status CheckReleaseSigma(const Release& release) {
  if (!(release.sigma >= 0.0) || !std::isfinite(release.sigma)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "release sigma must be non-negative and finite, got ", release.sigma));
  }
  return absl::OkStatus();
}

std::vector<double> Scaled(std::span<const double> values, double factor) {
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v *= factor;
  return out;
}

}  // namespace

absl::StatusOr<std::vector<double>> DenoiseBayesGaussianPrior(
    const Release& release, double w2) {
  if (!(w2 > 0.0) || !std::isfinite(w2)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "prior variance w2 must be positive and finite, got ", w2));
  }
  if (absl::Status s = CheckReleaseSigma(release); !s.ok()) return s;
  if (release.sigma == 0.0) return release.values;
  const double var = release.sigma * release.sigma;
  return Scaled(release.values, w2 / (w2 + var));
}

absl::StatusOr<std::vector<double>> DenoiseJamesStein(
    const Release& release, const JamesSteinOptions& options) {
  const size_t d = release.d();
  if (d < 3) {
    return absl::InvalidArgumentError(absl::StrCat(
        "James-Stein shrinkage needs d >= 3 (it only dominates the raw "
        "release when d >= 3), got d = ",
        d));
  }
  if (absl::Status s = CheckReleaseSigma(release); !s.ok()) return s;
  if (release.sigma == 0.0) return release.values;
  double norm2 = 0.0;
  for (double v : release.values) norm2 += v * v;
  if (norm2 == 0.0) {
    return absl::InvalidArgumentError(
        "James-Stein shrinkage is undefined for an all-zero release");
  }
  const double var = release.sigma * release.sigma;
  double factor = 1.0 - static_cast<double>(d - 2) * var / norm2;
  if (options.positive_part && factor < 0.0) factor = 0.0;
  return Scaled(release.values, factor);
}

double DefaultSoftThreshold(double sigma, size_t d) {
  if (d <= 1) return 0.0;
  return sigma * std::sqrt(2.0 * std::log(static_cast<double>(d)));
}

absl::StatusOr<std::vector<double>> DenoiseSoftThreshold(
    const Release& release, std::optional<double> lambda) {
  if (release.d() < 1) {
    return absl::InvalidArgumentError("soft thresholding needs d >= 1");
  }
  if (lambda.has_value() && (!(*lambda > 0.0) || !std::isfinite(*lambda))) {
    return absl::InvalidArgumentError(absl::StrCat(
        "soft threshold must be positive and finite, got ", *lambda));
  }
  if (absl::Status s = CheckReleaseSigma(release); !s.ok()) return s;
  const double threshold =
      lambda.value_or(DefaultSoftThreshold(release.sigma, release.d()));
  std::vector<double> out(release.values);
  for (double& v : out) {
    const double shrunk = std::abs(v) - threshold;
    v = shrunk > 0.0 ? std::copysign(shrunk, v) : 0.0;
  }
  return out;
}

absl::StatusOr<std::vector<double>> Denoise(const Release& release,
                                            const DenoiserChoice& choice) {
  if (const auto* bayes = std::get_if<BayesGaussianPrior>(&choice)) {
    return DenoiseBayesGaussianPrior(release, bayes->w2);
  }
  if (const auto* js = std::get_if<JamesStein>(&choice)) {
    return DenoiseJamesStein(release, js->options);
  }
  return DenoiseSoftThreshold(release, std::get<SoftThreshold>(choice).lambda);
}

absl::StatusOr<double> EstimateMse(
    std::span<const double> truth,
    std::span<const std::vector<double>> estimates) {
  if (estimates.empty()) {
    return absl::InvalidArgumentError("MSE needs at least one estimate");
  }
  double total = 0.0;
  for (size_t t = 0; t < estimates.size(); ++t) {
    const std::vector<double>& estimate = estimates[t];
    if (estimate.size() != truth.size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "estimate ", t, " has length ", estimate.size(), ", truth has ",
          truth.size()));
    }
    for (size_t j = 0; j < truth.size(); ++j) {
      const double diff = estimate[j] - truth[j];
      total += diff * diff;
    }
  }
  return total / static_cast<double>(estimates.size());
}

}  // namespace gaussdp
