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

#include "gaussdp/mechanism.h"

#include <cmath>

#include "absl/strings/str_cat.h"
#include "gaussdp/rng.h"

namespace gaussdp {
namespace {

absl::Status CheckShape(int64_t n, int64_t d) {
  if (n < 1 || d < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "query needs n >= 1 and d >= 1, got n = ", n, ", d = ", d));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<QuerySpec> QuerySpec::Mean(int64_t n, int64_t d) {
  if (absl::Status s = CheckShape(n, d); !s.ok()) return s;
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return QuerySpec{.kind = QueryKind::kMean,
                   .n = n,
                   .d = d,
                   .sensitivities = {.l2 = std::sqrt(dd) / nn, .l1 = dd / nn}};
}

absl::StatusOr<QuerySpec> QuerySpec::Histogram(int64_t n, int64_t d) {
  if (absl::Status s = CheckShape(n, d); !s.ok()) return s;
  const double nn = static_cast<double>(n);
  return QuerySpec{.kind = QueryKind::kHistogram,
                   .n = n,
                   .d = d,
                   .sensitivities = {.l2 = std::sqrt(2.0) / nn, .l1 = 2.0 / nn}};
}

absl::StatusOr<std::vector<double>> EvaluateQuery(const QuerySpec& spec,
                                                  const Dataset& dataset) {
  const auto n = static_cast<size_t>(spec.n);
  const auto d = static_cast<size_t>(spec.d);
  if (spec.kind == QueryKind::kMean) {
    const auto* records = std::get_if<RecordMatrix>(&dataset);
    if (records == nullptr) {
      return absl::InvalidArgumentError("mean query needs a record matrix");
    }
    if (records->rows() != n || records->cols() != d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "mean query expects a ", n, " x ", d, " matrix, got ",
          records->rows(), " x ", records->cols()));
    }
    std::vector<double> mean(d, 0.0);
    for (size_t i = 0; i < n; ++i) {
      std::span<const double> row = records->row(i);
      for (size_t j = 0; j < d; ++j) mean[j] += row[j];
    }
    for (double& m : mean) m /= static_cast<double>(n);
    return mean;
  }

  const auto* labels = std::get_if<LabelVector>(&dataset);
  if (labels == nullptr) {
    return absl::InvalidArgumentError("histogram query needs a label vector");
  }
  if (labels->size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "histogram query expects ", n, " labels, got ", labels->size()));
  }
  std::vector<double> counts(d, 0.0);
  for (int64_t label : *labels) {
    if (label < 1 || label > spec.d) {
      return absl::InvalidArgumentError(absl::StrCat(
          "histogram label ", label, " outside [1, ", spec.d, "]"));
    }
    counts[static_cast<size_t>(label - 1)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(n);
  return counts;
}

std::string_view MechanismName(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::kAnalyticGaussian:
      return "analytic";
    case MechanismKind::kClassicalGaussian:
      return "classical";
    case MechanismKind::kLaplace:
      return "laplace";
    case MechanismKind::kNoNoise:
      return "none";
  }
  return "unknown";
}

absl::StatusOr<MechanismKind> ParseMechanismName(std::string_view name) {
  for (MechanismKind kind :
       {MechanismKind::kAnalyticGaussian, MechanismKind::kClassicalGaussian,
        MechanismKind::kLaplace, MechanismKind::kNoNoise}) {
    if (name == MechanismName(kind)) return kind;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mechanism '", std::string(name),
      "'; expected analytic, classical, laplace or none"));
}

absl::StatusOr<Release> PerturbGaussian(std::span<const double> exact,
                                        double sigma, uint64_t seed,
                                        MechanismKind kind) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Gaussian sigma must be non-negative and finite, got ", sigma));
  }
  if (kind != MechanismKind::kAnalyticGaussian &&
      kind != MechanismKind::kClassicalGaussian &&
      kind != MechanismKind::kNoNoise) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PerturbGaussian cannot label a release as ",
        std::string(MechanismName(kind))));
  }
  Release release{.values = {exact.begin(), exact.end()},
                  .sigma = sigma,
                  .mechanism = sigma == 0.0 ? MechanismKind::kNoNoise : kind,
                  .seed = seed};
  if (sigma == 0.0) return release;
  Rng rng(seed);
  for (double& v : release.values) v += sigma * rng.StandardNormal();
  return release;
}

absl::StatusOr<Release> PerturbLaplace(std::span<const double> exact,
                                       double scale, uint64_t seed) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Laplace scale must be positive and finite, got ", scale));
  }
  Release release{.values = {exact.begin(), exact.end()},
                  .sigma = scale,
                  .mechanism = MechanismKind::kLaplace,
                  .seed = seed};
  Rng rng(seed);
  for (double& v : release.values) v += rng.Laplace(scale);
  return release;
}

absl::StatusOr<PrivacyLossTails> EmpiricalPrivacyLossCheck(double epsilon,
                                                           double distance,
                                                           double sigma,
                                                           int64_t samples,
                                                           uint64_t seed) {
  // Reuses the analytic check for the parameter domain.
  absl::StatusOr<PrivacyLossTails> domain =
      PrivacyLossTailProbabilities(epsilon, distance, sigma);
  if (!domain.ok()) return domain.status();
  if (samples < 10000) {
    return absl::InvalidArgumentError(absl::StrCat(
        "privacy-loss check needs at least 10^4 samples, got ", samples));
  }

  // f(x) = 0 and f(x') = D on the line joining them; the orthogonal
  // coordinates cancel in the density ratio.
  const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
  Rng rng(seed);
  int64_t upper_hits = 0;
  int64_t lower_hits = 0;
  for (int64_t i = 0; i < samples; ++i) {
    const double y = sigma * rng.StandardNormal();
    const double loss = ((y - distance) * (y - distance) - y * y) * inv_two_var;
    if (loss >= epsilon) ++upper_hits;
    const double y_prime = distance + sigma * rng.StandardNormal();
    const double loss_prime =
        (y_prime * y_prime - (y_prime - distance) * (y_prime - distance)) *
        inv_two_var;
    if (loss_prime <= -epsilon) ++lower_hits;
  }
  const double total = static_cast<double>(samples);
  return PrivacyLossTails{.upper = upper_hits / total,
                          .lower = lower_hits / total};
}

}  // namespace gaussdp
