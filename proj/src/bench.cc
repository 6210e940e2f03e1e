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

#include "gaussdp/bench.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "gaussdp/calibrate.h"
#include "gaussdp/denoise.h"
#include "gaussdp/rng.h"

namespace gaussdp {
namespace {

// Stream ids under a trial seed.
constexpr uint64_t kDatasetStream = 0;
constexpr uint64_t kClassicalStream = 1;
constexpr uint64_t kAnalyticStream = 2;
constexpr uint64_t kLaplaceStream = 3;

struct Errors {
  double l1 = 0.0;
  double l2 = 0.0;
};

Errors Distance(std::span<const double> a, std::span<const double> b) {
  Errors e;
  double sq = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    e.l1 += std::abs(diff);
    sq += diff * diff;
  }
  e.l2 = std::sqrt(sq);
  return e;
}

bool Contains(std::span<const Method> methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

// Noise scales for one dimension; shared by every trial at that d.
struct Calibrations {
  double classical = 0.0;
  double analytic = 0.0;
  double laplace = 0.0;
};

absl::StatusOr<Calibrations> CalibrateFor(const EstimationConfig& config,
                                          const QuerySpec& query) {
  Calibrations c;
  const PrivacySpec spec{.epsilon = config.epsilon, .delta = config.delta};
  const std::span<const Method> methods(config.methods);
  if (Contains(methods, Method::kClassical)) {
    absl::StatusOr<CalibrationResult> r =
        CalibrateClassical(spec, query.sensitivities.l2);
    if (!r.ok()) return r.status();
    c.classical = r->sigma;
  }
  if (Contains(methods, Method::kAnalytic) ||
      Contains(methods, Method::kAnalyticJs) ||
      Contains(methods, Method::kAnalyticTh)) {
    absl::StatusOr<CalibrationResult> r =
        CalibrateAnalytic(spec, query.sensitivities.l2);
    if (!r.ok()) return r.status();
    c.analytic = r->sigma;
  }
  if (Contains(methods, Method::kLaplace)) {
    absl::StatusOr<CalibrationResult> r =
        CalibrateLaplace(config.epsilon, query.sensitivities.l1);
    if (!r.ok()) return r.status();
    c.laplace = r->sigma;
  }
  return c;
}

absl::StatusOr<std::vector<ExperimentRecord>> RunTrial(
    const EstimationConfig& config, const QuerySpec& query,
    const Calibrations& calibrations, int64_t trial) {
  const uint64_t seed = TrialSeed(config.base_seed, query.d, trial);
  const uint64_t data_seed = DeriveSeed(seed, kDatasetStream);

  Dataset dataset;
  if (query.kind == QueryKind::kMean) {
    absl::StatusOr<RecordMatrix> data =
        GenMeanDataset(query.n, query.d, data_seed);
    if (!data.ok()) return data.status();
    dataset = std::move(*data);
  } else {
    absl::StatusOr<LabelVector> data =
        GenHistogramDataset(query.n, query.d, data_seed);
    if (!data.ok()) return data.status();
    dataset = std::move(*data);
  }
  absl::StatusOr<std::vector<double>> exact = EvaluateQuery(query, dataset);
  if (!exact.ok()) return exact.status();

  std::vector<ExperimentRecord> out;
  auto record = [&](Method method, std::span<const double> estimate,
                    double sigma_used) {
    const Errors e = Distance(estimate, *exact);
    ExperimentRecord r;
    r.method = method;
    r.d = query.d;
    r.epsilon = config.epsilon;
    r.delta = method == Method::kLaplace ? 0.0 : config.delta;
    r.trial = trial;
    r.error_l1 = e.l1;
    r.error_l2 = e.l2;
    r.error = query.kind == QueryKind::kMean ? e.l2 : e.l1;
    r.sigma_used = sigma_used;
    out.push_back(r);
  };

  const std::span<const Method> methods(config.methods);
  if (Contains(methods, Method::kClassical)) {
    absl::StatusOr<Release> release =
        PerturbGaussian(*exact, calibrations.classical,
                        DeriveSeed(seed, kClassicalStream),
                        MechanismKind::kClassicalGaussian);
    if (!release.ok()) return release.status();
    record(Method::kClassical, release->values, release->sigma);
  }
  const bool need_analytic = Contains(methods, Method::kAnalytic) ||
                             Contains(methods, Method::kAnalyticJs) ||
                             Contains(methods, Method::kAnalyticTh);
  if (need_analytic) {
    absl::StatusOr<Release> release =
        PerturbGaussian(*exact, calibrations.analytic,
                        DeriveSeed(seed, kAnalyticStream),
                        MechanismKind::kAnalyticGaussian);
    if (!release.ok()) return release.status();
    if (Contains(methods, Method::kAnalytic)) {
      record(Method::kAnalytic, release->values, release->sigma);
    }
    if (Contains(methods, Method::kAnalyticJs)) {
      absl::StatusOr<std::vector<double>> js = DenoiseJamesStein(*release);
      if (!js.ok()) return js.status();
      record(Method::kAnalyticJs, *js, release->sigma);
    }
    if (Contains(methods, Method::kAnalyticTh)) {
      absl::StatusOr<std::vector<double>> th = DenoiseSoftThreshold(*release);
      if (!th.ok()) return th.status();
      record(Method::kAnalyticTh, *th, release->sigma);
    }
  }
  if (Contains(methods, Method::kLaplace)) {
    absl::StatusOr<Release> release = PerturbLaplace(
        *exact, calibrations.laplace, DeriveSeed(seed, kLaplaceStream));
    if (!release.ok()) return release.status();
    record(Method::kLaplace, release->values, release->sigma);
  }
  if (Contains(methods, Method::kNoNoise)) {
    record(Method::kNoNoise, *exact, 0.0);
  }
  return out;
}

}  // namespace

absl::Status SweepConfig::Validate() const {
  if (epsilon_grid.empty() || delta_grid.empty()) {
    return absl::InvalidArgumentError("sweep grids must be nonempty");
  }
  for (double eps : epsilon_grid) {
    if (!(eps > 0.0) || !std::isfinite(eps)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sweep epsilon must be positive and finite, got ", eps));
    }
  }
  for (double delta : delta_grid) {
    if (!(delta > 0.0 && delta < 1.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("sweep delta must lie in (0, 1), got ", delta));
    }
  }
  if (!(delta_l2 > 0.0) || !std::isfinite(delta_l2)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sweep sensitivity must be positive and finite, got ", delta_l2));
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sweep tolerance must be positive and finite, got ", tolerance));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::vector<SweepRow>> RunCalibrationSweep(
    const SweepConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  std::vector<SweepRow> rows;
  rows.reserve(config.epsilon_grid.size() * config.delta_grid.size());
  for (double eps : config.epsilon_grid) {
    for (double delta : config.delta_grid) {
      const PrivacySpec spec{.epsilon = eps, .delta = delta};
      absl::StatusOr<CalibrationResult> analytic =
          CalibrateAnalytic(spec, config.delta_l2, config.tolerance);
      if (!analytic.ok()) return analytic.status();
      SweepRow row{.epsilon = eps,
                   .delta = delta,
                   .sigma_classical = std::nullopt,
                   .sigma_analytic = analytic->sigma,
                   .variance_gain = std::nullopt};
      if (eps < 1.0) {
        absl::StatusOr<CalibrationResult> classical =
            CalibrateClassical(spec, config.delta_l2);
        if (!classical.ok()) return classical.status();
        row.sigma_classical = classical->sigma;
        const double ratio = classical->sigma / analytic->sigma;
        row.variance_gain = ratio * ratio;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

absl::StatusOr<RecordMatrix> GenMeanDataset(int64_t n, int64_t d,
                                            uint64_t seed) {
  if (n < 1 || d < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "mean dataset needs n >= 1 and d >= 1, got n = ", n, ", d = ", d));
  }
  const auto rows = static_cast<size_t>(n);
  const auto cols = static_cast<size_t>(d);
  Rng rng(seed);
  std::vector<double> center(cols);
  for (double& c : center) c = rng.StandardNormal();
  RecordMatrix records(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    std::span<double> row = records.row(i);
    for (size_t j = 0; j < cols; ++j) {
      row[j] = center[j] + (rng.Uniform() - 0.5);
    }
  }
  return records;
}

absl::StatusOr<LabelVector> GenHistogramDataset(int64_t n, int64_t d,
                                                uint64_t seed) {
  if (n < 1 || d < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "histogram dataset needs n >= 1 and d >= 2, got n = ", n,
        ", d = ", d));
  }
  const auto categories = static_cast<size_t>(d);
  const double alpha = 1.0 / static_cast<double>(d);
  Rng rng(seed);

  // Dirichlet weights as normalized Gamma(alpha) variates, in log space.
  std::vector<double> log_weights(categories);
  for (double& w : log_weights) w = rng.LogGamma(alpha);
  const double max_log = *std::max_element(log_weights.begin(),
                                           log_weights.end());
  std::vector<double> cumulative(categories);
  double total = 0.0;
  for (size_t j = 0; j < categories; ++j) {
    total += std::exp(log_weights[j] - max_log);
    cumulative[j] = total;
  }

  LabelVector labels(static_cast<size_t>(n));
  for (int64_t& label : labels) {
    const double u = rng.Uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    label = static_cast<int64_t>(it - cumulative.begin()) + 1;
  }
  return labels;
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kClassical:
      return "cGM";
    case Method::kAnalytic:
      return "aGM";
    case Method::kAnalyticJs:
      return "aGM-JS";
    case Method::kAnalyticTh:
      return "aGM-TH";
    case Method::kLaplace:
      return "Lap";
    case Method::kNoNoise:
      return "none";
  }
  return "unknown";
}

absl::StatusOr<Method> ParseMethodName(std::string_view name) {
  for (Method m : {Method::kClassical, Method::kAnalytic, Method::kAnalyticJs,
                   Method::kAnalyticTh, Method::kLaplace, Method::kNoNoise}) {
    if (name == MethodName(m)) return m;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown method '", std::string(name),
      "'; expected cGM, aGM, aGM-JS, aGM-TH, Lap or none"));
}

absl::Status EstimationConfig::Validate() const {
  if (n < 1) {
    return absl::InvalidArgumentError(absl::StrCat("n must be >= 1, got ", n));
  }
  if (trials < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("trials must be >= 1, got ", trials));
  }
  if (d_grid.empty()) return absl::InvalidArgumentError("d grid is empty");
  if (methods.empty()) return absl::InvalidArgumentError("no methods given");
  for (size_t i = 0; i < methods.size(); ++i) {
    for (size_t j = i + 1; j < methods.size(); ++j) {
      if (methods[i] == methods[j]) {
        return absl::InvalidArgumentError(absl::StrCat(
            "method ", std::string(MethodName(methods[i])), " listed twice"));
      }
    }
  }
  const int64_t min_d = task == QueryKind::kHistogram ? 2 : 1;
  const bool uses_js = Contains(methods, Method::kAnalyticJs);
  for (int64_t d : d_grid) {
    if (d < min_d) {
      return absl::InvalidArgumentError(
          absl::StrCat("d must be >= ", min_d, " for this task, got ", d));
    }
    if (uses_js && d < 3) {
      return absl::InvalidArgumentError(absl::StrCat(
          "aGM-JS needs d >= 3 (James-Stein only dominates when d >= 3), "
          "got d = ",
          d));
    }
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive and finite, got ", epsilon));
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  if (Contains(methods, Method::kClassical) && !(epsilon < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cGM is only valid for epsilon in (0, 1), got ", epsilon));
  }
  if (threads < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("threads must be >= 1, got ", threads));
  }
  return absl::OkStatus();
}

uint64_t TrialSeed(uint64_t base_seed, int64_t d, int64_t trial) {
  return DeriveSeed(base_seed, static_cast<uint64_t>(d),
                    static_cast<uint64_t>(trial) + 1);
}

absl::StatusOr<std::vector<ExperimentRecord>> RunEstimationExperiment(
    const EstimationConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;

  std::vector<QuerySpec> queries;
  std::vector<Calibrations> calibrations;
  for (int64_t d : config.d_grid) {
    absl::StatusOr<QuerySpec> query = config.task == QueryKind::kMean
                                          ? QuerySpec::Mean(config.n, d)
                                          : QuerySpec::Histogram(config.n, d);
    if (!query.ok()) return query.status();
    absl::StatusOr<Calibrations> c = CalibrateFor(config, *query);
    if (!c.ok()) return c.status();
    queries.push_back(*query);
    calibrations.push_back(*c);
  }

  // One cell per (d, trial), filled by index so scheduling cannot reorder.
  const size_t cells = queries.size() * static_cast<size_t>(config.trials);
  std::vector<absl::StatusOr<std::vector<ExperimentRecord>>> results(
      cells, absl::UnknownError("not run"));
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t cell = next++; cell < cells; cell = next++) {
      const size_t q = cell / static_cast<size_t>(config.trials);
      const auto trial =
          static_cast<int64_t>(cell % static_cast<size_t>(config.trials));
      results[cell] = RunTrial(config, queries[q], calibrations[q], trial);
    }
  };
  const int threads = std::min<int64_t>(config.threads, cells);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<ExperimentRecord> records;
  for (auto& cell : results) {
    if (!cell.ok()) return cell.status();
    records.insert(records.end(), cell->begin(), cell->end());
  }
  std::stable_sort(records.begin(), records.end(),
                   [](const ExperimentRecord& a, const ExperimentRecord& b) {
                     return std::tie(a.method, a.d, a.trial) <
                            std::tie(b.method, b.d, b.trial);
                   });
  return records;
}

absl::StatusOr<std::vector<SummaryRow>> Summarize(
    std::span<const ExperimentRecord> records) {
  if (records.empty()) {
    return absl::InvalidArgumentError("cannot summarize an empty record list");
  }
  std::map<std::pair<Method, int64_t>, std::vector<double>> groups;
  for (const ExperimentRecord& r : records) {
    groups[{r.method, r.d}].push_back(r.error);
  }
  std::vector<SummaryRow> rows;
  for (const auto& [key, errors] : groups) {
    const auto count = static_cast<double>(errors.size());
    double sum = 0.0;
    for (double e : errors) sum += e;
    const double mean = sum / count;
    double std_error = 0.0;
    if (errors.size() > 1) {
      double ss = 0.0;
      for (double e : errors) ss += (e - mean) * (e - mean);
      std_error = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
    }
    rows.push_back(SummaryRow{.method = key.first,
                              .d = key.second,
                              .count = static_cast<int64_t>(errors.size()),
                              .mean_error = mean,
                              .std_error = std_error});
  }
  return rows;
}

}  // namespace gaussdp
