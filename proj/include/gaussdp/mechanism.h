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

#ifndef GAUSSDP_MECHANISM_H_
#define GAUSSDP_MECHANISM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "gaussdp/calibrate.h"

namespace gaussdp {

enum class QueryKind { kMean, kHistogram };

// A query together with its global sensitivities. Only constructible through
// the factories, which fix the sensitivities for the supported data models.
struct QuerySpec {
  QueryKind kind = QueryKind::kMean;
  int64_t n = 0;
  int64_t d = 0;
  SensitivityProfile sensitivities;

  // Mean of n records whose pairwise L-infinity distance is at most 1
  // under replace-one neighbours: l2 = sqrt(d)/n, l1 = d/n.
  static absl::StatusOr<QuerySpec> Mean(int64_t n, int64_t d);
  // Normalized histogram over d categories, replace-one neighbours:
  // l2 = sqrt(2)/n, l1 = 2/n.
  static absl::StatusOr<QuerySpec> Histogram(int64_t n, int64_t d);
};

// Dense row-major n x d matrix of records.
class RecordMatrix {
 public:
  RecordMatrix() = default;
  RecordMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols),
                                           data_(rows * cols, 0.0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  double operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::span<double> row(size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  bool operator==(const RecordMatrix&) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Category labels in 1..d.
using LabelVector = std::vector<int64_t>;

using Dataset = std::variant<RecordMatrix, LabelVector>;

// Exact, non-private answer: coordinate means for kMean, category
// frequencies (summing to 1) for kHistogram.
absl::StatusOr<std::vector<double>> EvaluateQuery(const QuerySpec& spec,
                                                  const Dataset& dataset);

enum class MechanismKind {
  kAnalyticGaussian,
  kClassicalGaussian,
  kLaplace,
  kNoNoise,
};

std::string_view MechanismName(MechanismKind kind);
absl::StatusOr<MechanismKind> ParseMechanismName(std::string_view name);

struct Release {
  std::vector<double> values;
  // Gaussian standard deviation, or Laplace scale. Denoisers read it.
  double sigma = 0.0;
  MechanismKind mechanism = MechanismKind::kNoNoise;
  uint64_t seed = 0;

  size_t d() const { return values.size(); }
};

// exact + sigma * z, z i.i.d. standard normal drawn from `seed`. `kind` labels
// the release and must be one of the Gaussian kinds; sigma = 0 yields an
// unmodified kNoNoise release.
absl::StatusOr<Release> PerturbGaussian(
    std::span<const double> exact, double sigma, uint64_t seed,
    MechanismKind kind = MechanismKind::kAnalyticGaussian);

// exact + i.i.d. Laplace(0, scale) noise drawn from `seed`.
absl::StatusOr<Release> PerturbLaplace(std::span<const double> exact,
                                       double scale, uint64_t seed);

// Monte-Carlo estimate of the two privacy-loss tails. Each sample releases
// M(x) = f(x) + N(0, sigma^2) in the direction separating f(x) and f(x') at
// the given distance, and evaluates the log density ratio L of M(x) against
// M(x') (and L' symmetrically). Returns the frequencies of {L >= eps} and
// {L' <= -eps}. Requires samples >= 10^4.
absl::StatusOr<PrivacyLossTails> EmpiricalPrivacyLossCheck(double epsilon,
                                                           double distance,
                                                           double sigma,
                                                           int64_t samples,
                                                           uint64_t seed);

}  // namespace gaussdp

#endif  // GAUSSDP_MECHANISM_H_
