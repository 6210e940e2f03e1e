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

#ifndef GAUSSDP_BENCH_H_
#define GAUSSDP_BENCH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gaussdp/gauss_num.h"
#include "gaussdp/mechanism.h"

namespace gaussdp {

// ---------------------------------------------------------------------------
// Calibration sweep: analytic vs classical sigma over an (eps, delta) grid.
// ---------------------------------------------------------------------------

struct SweepConfig {
  std::vector<double> epsilon_grid;
  std::vector<double> delta_grid;
  double delta_l2 = 1.0;
  double tolerance = kDefaultTolerance;

  absl::Status Validate() const;
};

struct SweepRow {
  double epsilon = 0.0;
  double delta = 0.0;
  // Absent where the classical formula is not valid (eps >= 1).
  std::optional<double> sigma_classical;
  double sigma_analytic = 0.0;
  // (sigma_classical / sigma_analytic)^2.
  std::optional<double> variance_gain;
};

// Rows in grid order, epsilon-major. Deterministic.
absl::StatusOr<std::vector<SweepRow>> RunCalibrationSweep(
    const SweepConfig& config);

// ---------------------------------------------------------------------------
// Synthetic datasets.
// ---------------------------------------------------------------------------

// n records x_i = x0 + xi_i with x0 ~ N(0, I_d) and xi_i uniform on
// [-1/2, 1/2]^d. Every pair of rows is within L-infinity distance 1.
absl::StatusOr<RecordMatrix> GenMeanDataset(int64_t n, int64_t d,
                                            uint64_t seed);

// n labels in 1..d drawn from a categorical distribution whose parameters
// are themselves drawn from a symmetric Dirichlet(1/d), fresh per call.
absl::StatusOr<LabelVector> GenHistogramDataset(int64_t n, int64_t d,
                                                uint64_t seed);

// ---------------------------------------------------------------------------
// Estimation experiments.
// ---------------------------------------------------------------------------

// Canonical order of methods in every output.
enum class Method {
  kClassical,   // cGM
  kAnalytic,    // aGM
  kAnalyticJs,  // aGM-JS
  kAnalyticTh,  // aGM-TH
  kLaplace,     // Lap
  kNoNoise,     // none: non-private control
};

std::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethodName(std::string_view name);

struct EstimationConfig {
  QueryKind task = QueryKind::kMean;
  int64_t n = 500;
  std::vector<int64_t> d_grid;
  double epsilon = 0.0;
  double delta = 1e-4;
  int64_t trials = 100;
  std::vector<Method> methods;
  uint64_t base_seed = 0;
  // Worker threads; results do not depend on it.
  int threads = 1;

  absl::Status Validate() const;
};

struct ExperimentRecord {
  Method method = Method::kNoNoise;
  int64_t d = 0;
  double epsilon = 0.0;
  // Zero for Laplace, which gives pure epsilon-DP.
  double delta = 0.0;
  int64_t trial = 0;
  // L2 error for the mean task, L1 for the histogram task.
  double error = 0.0;
  double error_l2 = 0.0;
  double error_l1 = 0.0;
  // Gaussian sigma or Laplace scale; 0 for the control.
  double sigma_used = 0.0;

  bool operator==(const ExperimentRecord&) const = default;
};

// Seed for one (d, trial) cell: base_seed xor a SplitMix64 mix of (d, trial).
uint64_t TrialSeed(uint64_t base_seed, int64_t d, int64_t trial);

// For each (d, trial): a fresh dataset from TrialSeed, its exact answer, and
// one release per method. aGM-JS and aGM-TH post-process the very release
// reported as aGM. Records are sorted by (method, d, trial).
absl::StatusOr<std::vector<ExperimentRecord>> RunEstimationExperiment(
    const EstimationConfig& config);

struct SummaryRow {
  Method method = Method::kNoNoise;
  int64_t d = 0;
  int64_t count = 0;
  double mean_error = 0.0;
  // Sample standard deviation / sqrt(count); 0 for a single record.
  double std_error = 0.0;
};

// Groups by (method, d) in canonical order.
absl::StatusOr<std::vector<SummaryRow>> Summarize(
    std::span<const ExperimentRecord> records);

}  // namespace gaussdp

#endif  // GAUSSDP_BENCH_H_
