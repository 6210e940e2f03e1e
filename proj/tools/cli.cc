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

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "gaussdp/bench.h"
#include "gaussdp/calibrate.h"
#include "gaussdp/denoise.h"
#include "gaussdp/mechanism.h"
#include "gaussdp/report.h"
#include "json.hpp"

namespace gaussdp::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { kPlain, kJson, kCsv };

const std::map<std::string, Format> kFormatNames = {
    {"plain", Format::kPlain},
    {"json", Format::kJson},
    {"jsonl", Format::kJson},
    {"csv", Format::kCsv}};

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
      return kExitDomain;
    default:
      return kExitNumerical;
  }
}

std::filesystem::path ResolveOutputPath(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      return std::filesystem::path(dir) / p;
    }
  }
  return p;
}

// Writes to the named file, or to `out` when no path was given.
absl::Status Emit(const std::string& content, const std::string& output_path,
                  std::ostream& out) {
  if (output_path.empty()) {
    out << content;
    return absl::OkStatus();
  }
  const std::filesystem::path path = ResolveOutputPath(output_path);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot open output file ", path.string()));
  }
  file << content;
  file.close();
  if (!file) {
    return absl::InvalidArgumentError(
        absl::StrCat("failed writing ", path.string()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) {
    return absl::InvalidArgumentError(absl::StrCat("cannot open ", path));
  }
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  Json parsed = Json::parse(*text, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, " is not valid JSON"));
  }
  return parsed;
}

std::string ScalarText(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_unsigned()) return std::to_string(value.get<uint64_t>());
  if (value.is_number_integer()) return std::to_string(value.get<int64_t>());
  if (value.is_number_float()) return FormatDouble(value.get<double>());
  return value.dump();
}

// A flat JSON object as "key: value" lines, one-line JSON, or a two-line CSV.
std::string RenderObject(const Json& object, Format format) {
  std::string text;
  switch (format) {
    case Format::kJson:
      return object.dump() + "\n";
    case Format::kPlain:
      for (const auto& [key, value] : object.items()) {
        absl::StrAppend(&text, key, ": ", ScalarText(value), "\n");
      }
      return text;
    case Format::kCsv: {
      std::string header;
      std::string row;
      for (const auto& [key, value] : object.items()) {
        if (!header.empty()) {
          header += ',';
          row += ',';
        }
        header += CsvField(key);
        row += CsvField(ScalarText(value));
      }
      return header + "\r\n" + row + "\r\n";
    }
  }
  return text;
}

Json OptionalNumber(const std::optional<double>& value) {
  return value.has_value() ? Json(*value) : Json(nullptr);
}

// Splits on commas and whitespace, dropping empty tokens.
std::vector<absl::string_view> Tokens(absl::string_view line) {
  return absl::StrSplit(line, absl::ByAnyChar(", \t\r"), absl::SkipEmpty());
}

template <typename T>
absl::StatusOr<T> ParseNumber(absl::string_view token) {
  T value{};
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot parse number '", token, "'"));
  }
  return value;
}

absl::StatusOr<RecordMatrix> ParseRecordMatrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<absl::string_view> tokens = Tokens(line);
    if (tokens.empty()) continue;
    std::vector<double> row;
    for (absl::string_view token : tokens) {
      absl::StatusOr<double> v = ParseNumber<double>(token);
      if (!v.ok()) return v.status();
      row.push_back(*v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "record ", rows.size() + 1, " has ", row.size(),
          " columns, expected ", rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return absl::InvalidArgumentError("input has no records");
  RecordMatrix matrix(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), matrix.row(i).begin());
  }
  return matrix;
}

absl::StatusOr<LabelVector> ParseLabels(const std::string& text) {
  LabelVector labels;
  for (absl::string_view line : absl::StrSplit(text, '\n')) {
    if (line.empty() || line.front() == '#') continue;
    for (absl::string_view token : Tokens(line)) {
      absl::StatusOr<int64_t> v = ParseNumber<int64_t>(token);
      if (!v.ok()) return v.status();
      labels.push_back(*v);
    }
  }
  if (labels.empty()) return absl::InvalidArgumentError("input has no labels");
  return labels;
}

Json CalibrationJson(std::string_view mechanism,
                     const CalibrationResult& result) {
  Json j;
  j["mechanism"] = std::string(mechanism);
  j["sigma"] = result.sigma;
  j["alpha"] = OptionalNumber(result.alpha);
  j["branch"] = std::string(BranchName(result.branch));
  j["delta_zero"] = OptionalNumber(result.delta_zero);
  j["achieved_delta"] = result.achieved_delta;
  j["iterations"] = result.iterations;
  return j;
}

// ---------------------------------------------------------------------------

struct CalibrateFlags {
  std::string mechanism = "analytic";
  double epsilon = 0.0;
  std::optional<double> delta;
  double sensitivity = 1.0;
  double tolerance = kDefaultTolerance;
};

absl::StatusOr<CalibrationResult> Calibrate(const CalibrateFlags& flags) {
  if (flags.mechanism == "laplace") {
    return CalibrateLaplace(flags.epsilon, flags.sensitivity);
  }
  if (!flags.delta.has_value()) {
    return absl::InvalidArgumentError(
        absl::StrCat("--delta is required for mechanism ", flags.mechanism));
  }
  const PrivacySpec spec{.epsilon = flags.epsilon, .delta = *flags.delta};
  if (flags.mechanism == "classical") {
    return CalibrateClassical(spec, flags.sensitivity);
  }
  return CalibrateAnalytic(spec, flags.sensitivity, flags.tolerance);
}

absl::StatusOr<std::string> RunCalibrate(const CalibrateFlags& flags,
                                         Format format) {
  absl::StatusOr<CalibrationResult> result = Calibrate(flags);
  if (!result.ok()) return result.status();
  return RenderObject(CalibrationJson(flags.mechanism, *result), format);
}

struct ProfileFlags {
  double epsilon = 0.0;
  double sigma = 0.0;
  double sensitivity = 1.0;
};

absl::StatusOr<std::string> RunProfile(const ProfileFlags& flags,
                                       Format format) {
  absl::StatusOr<double> delta =
      AchievedDelta(flags.epsilon, flags.sigma, flags.sensitivity);
  if (!delta.ok()) return delta.status();
  Json j;
  j["epsilon"] = flags.epsilon;
  j["sigma"] = flags.sigma;
  j["sensitivity"] = flags.sensitivity;
  j["achieved_delta"] = *delta;
  return RenderObject(j, format);
}

struct PerturbFlags {
  std::string input;
  std::string query = "mean";
  std::optional<int64_t> d;
  std::string mechanism = "analytic";
  std::optional<double> epsilon;
  std::optional<double> delta;
  uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
};

absl::StatusOr<std::string> RunPerturb(const PerturbFlags& flags) {
  absl::StatusOr<MechanismKind> mechanism =
      ParseMechanismName(flags.mechanism);
  if (!mechanism.ok()) return mechanism.status();
  absl::StatusOr<std::string> text = ReadFile(flags.input);
  if (!text.ok()) return text.status();

  absl::StatusOr<QuerySpec> query = absl::InvalidArgumentError("");
  Dataset dataset;
  if (flags.query == "mean") {
    absl::StatusOr<RecordMatrix> records = ParseRecordMatrix(*text);
    if (!records.ok()) return records.status();
    if (flags.d.has_value() &&
        *flags.d != static_cast<int64_t>(records->cols())) {
      return absl::InvalidArgumentError(absl::StrCat(
          "--d ", *flags.d, " does not match the ", records->cols(),
          " input columns"));
    }
    query = QuerySpec::Mean(static_cast<int64_t>(records->rows()),
                            static_cast<int64_t>(records->cols()));
    dataset = std::move(*records);
  } else if (flags.query == "histogram") {
    if (!flags.d.has_value()) {
      return absl::InvalidArgumentError("histogram queries need --d");
    }
    absl::StatusOr<LabelVector> labels = ParseLabels(*text);
    if (!labels.ok()) return labels.status();
    query = QuerySpec::Histogram(static_cast<int64_t>(labels->size()),
                                 *flags.d);
    dataset = std::move(*labels);
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown query '", flags.query, "'; expected mean or histogram"));
  }
  if (!query.ok()) return query.status();
  absl::StatusOr<std::vector<double>> exact = EvaluateQuery(*query, dataset);
  if (!exact.ok()) return exact.status();

  if (*mechanism != MechanismKind::kNoNoise && !flags.epsilon.has_value()) {
    return absl::InvalidArgumentError("--epsilon is required");
  }
  const bool gaussian = *mechanism == MechanismKind::kAnalyticGaussian ||
                        *mechanism == MechanismKind::kClassicalGaussian;
  if (gaussian && !flags.delta.has_value()) {
    return absl::InvalidArgumentError("--delta is required");
  }

  absl::StatusOr<Release> release = absl::InternalError("unreachable");
  switch (*mechanism) {
    case MechanismKind::kAnalyticGaussian:
    case MechanismKind::kClassicalGaussian: {
      const PrivacySpec spec{.epsilon = *flags.epsilon, .delta = *flags.delta};
      absl::StatusOr<CalibrationResult> c =
          *mechanism == MechanismKind::kAnalyticGaussian
              ? CalibrateAnalytic(spec, query->sensitivities.l2,
                                  flags.tolerance)
              : CalibrateClassical(spec, query->sensitivities.l2);
      if (!c.ok()) return c.status();
      release = PerturbGaussian(*exact, c->sigma, flags.seed, *mechanism);
      break;
    }
    case MechanismKind::kLaplace: {
      absl::StatusOr<CalibrationResult> c =
          CalibrateLaplace(*flags.epsilon, query->sensitivities.l1);
      if (!c.ok()) return c.status();
      release = PerturbLaplace(*exact, c->sigma, flags.seed);
      break;
    }
    case MechanismKind::kNoNoise:
      release = PerturbGaussian(*exact, 0.0, flags.seed);
      break;
  }
  if (!release.ok()) return release.status();

  Json j;
  j["d"] = release->d();
  j["mechanism"] = std::string(MechanismName(release->mechanism));
  j["seed"] = release->seed;
  j["sigma"] = release->sigma;
  j["values"] = release->values;
  j["query"] = flags.query;
  j["n"] = query->n;
  j["epsilon"] = OptionalNumber(
      *mechanism == MechanismKind::kNoNoise ? std::nullopt : flags.epsilon);
  j["delta"] = gaussian ? Json(*flags.delta)
                        : (*mechanism == MechanismKind::kLaplace ? Json(0.0)
                                                                 : Json(nullptr));
  j["sensitivity_l2"] = query->sensitivities.l2;
  j["sensitivity_l1"] = query->sensitivities.l1;
  return j.dump() + "\n";
}

absl::StatusOr<Release> ReleaseFromJson(const Json& j) {
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array() ||
      !j.contains("sigma") || !j["sigma"].is_number() ||
      !j.contains("mechanism") || !j["mechanism"].is_string() ||
      !j.contains("d") || !j["d"].is_number_integer()) {
    return absl::InvalidArgumentError(
        "release file needs values, sigma, mechanism and d");
  }
  Release release;
  for (const Json& v : j["values"]) {
    if (!v.is_number()) {
      return absl::InvalidArgumentError("release values must be numbers");
    }
    release.values.push_back(v.get<double>());
  }
  if (j["d"].get<int64_t>() != static_cast<int64_t>(release.values.size())) {
    return absl::InvalidArgumentError(absl::StrCat(
        "release d = ", j["d"].get<int64_t>(), " but it holds ",
        release.values.size(), " values"));
  }
  release.sigma = j["sigma"].get<double>();
  absl::StatusOr<MechanismKind> kind =
      ParseMechanismName(j["mechanism"].get<std::string>());
  if (!kind.ok()) return kind.status();
  release.mechanism = *kind;
  if (j.contains("seed") && j["seed"].is_number_unsigned()) {
    release.seed = j["seed"].get<uint64_t>();
  }
  return release;
}

struct DenoiseFlags {
  std::string release;
  std::string estimator;
  std::optional<double> w2;
  std::optional<double> lambda;
  bool positive_part = false;
};

absl::StatusOr<std::string> RunDenoise(const DenoiseFlags& flags,
                                       Format format) {
  absl::StatusOr<Json> parsed = ReadJsonFile(flags.release);
  if (!parsed.ok()) return parsed.status();
  absl::StatusOr<Release> release = ReleaseFromJson(*parsed);
  if (!release.ok()) return release.status();
  if (release->mechanism == MechanismKind::kLaplace) {
    return absl::InvalidArgumentError(
        "denoisers assume Gaussian noise; got a Laplace release");
  }

  DenoiserChoice choice;
  std::optional<double> lambda_used;
  if (flags.estimator == "bayes") {
    if (!flags.w2.has_value()) {
      return absl::InvalidArgumentError("bayes needs --w2");
    }
    choice = BayesGaussianPrior{.w2 = *flags.w2};
  } else if (flags.estimator == "js") {
    choice = JamesStein{.options = {.positive_part = flags.positive_part}};
  } else if (flags.estimator == "soft") {
    choice = SoftThreshold{.lambda = flags.lambda};
    lambda_used = flags.lambda.value_or(
        DefaultSoftThreshold(release->sigma, release->d()));
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown estimator '", flags.estimator, "'; expected bayes, js, soft"));
  }
  absl::StatusOr<std::vector<double>> values = Denoise(*release, choice);
  if (!values.ok()) return values.status();

  if (format == Format::kCsv) {
    std::string text = "value\r\n";
    for (double v : *values) absl::StrAppend(&text, FormatDouble(v), "\r\n");
    return text;
  }
  if (format == Format::kPlain) {
    std::string text;
    for (double v : *values) absl::StrAppend(&text, FormatDouble(v), "\n");
    return text;
  }
  Json j;
  j["estimator"] = flags.estimator;
  j["d"] = values->size();
  j["sigma"] = release->sigma;
  j["source_mechanism"] = std::string(MechanismName(release->mechanism));
  j["seed"] = release->seed;
  if (lambda_used.has_value()) j["lambda"] = *lambda_used;
  if (flags.w2.has_value() && flags.estimator == "bayes") j["w2"] = *flags.w2;
  j["values"] = *values;
  return j.dump() + "\n";
}

// Copies `key` from a config object when the flag was not given explicitly.
template <typename T>
absl::Status FromConfig(const Json& config, const char* key,
                        const CLI::Option* flag, T& target) {
  if (!config.contains(key) || flag->count() > 0) return absl::OkStatus();
  try {
    if constexpr (std::is_same_v<T, std::optional<double>>) {
      target = config[key].get<double>();
    } else {
      target = config[key].get<T>();
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("config key '", key, "': ", e.what()));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> RunSweep(const SweepConfig& config,
                                     Format format) {
  absl::StatusOr<std::vector<SweepRow>> rows = RunCalibrationSweep(config);
  if (!rows.ok()) return rows.status();
  std::ostringstream text;
  if (format == Format::kJson) {
    WriteSweepJsonl(text, *rows);
  } else {
    WriteSweepCsv(text, *rows);
  }
  return text.str();
}

struct EstimateFlags {
  std::string task = "mean";
  int64_t n = 500;
  std::vector<int64_t> d;
  std::optional<double> epsilon;
  double delta = 1e-4;
  int64_t trials = 100;
  std::vector<std::string> methods;
  uint64_t seed = 0;
  int threads = 1;
  bool summary = false;
};

absl::StatusOr<std::string> RunEstimate(const EstimateFlags& flags,
                                        Format format) {
  EstimationConfig config;
  if (flags.task == "mean") {
    config.task = QueryKind::kMean;
  } else if (flags.task == "histogram") {
    config.task = QueryKind::kHistogram;
  } else {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown task '", flags.task, "'; expected mean or histogram"));
  }
  if (!flags.epsilon.has_value()) {
    return absl::InvalidArgumentError("--epsilon is required");
  }
  config.n = flags.n;
  config.d_grid = flags.d;
  config.epsilon = *flags.epsilon;
  config.delta = flags.delta;
  config.trials = flags.trials;
  config.base_seed = flags.seed;
  config.threads = flags.threads;
  if (flags.methods.empty()) {
    // Every method valid at this epsilon.
    for (Method m : {Method::kClassical, Method::kAnalytic,
                     Method::kAnalyticJs, Method::kAnalyticTh,
                     Method::kLaplace}) {
      if (m == Method::kClassical && !(config.epsilon < 1.0)) continue;
      config.methods.push_back(m);
    }
  } else {
    for (const std::string& name : flags.methods) {
      absl::StatusOr<Method> m = ParseMethodName(name);
      if (!m.ok()) return m.status();
      config.methods.push_back(*m);
    }
  }
  absl::StatusOr<std::vector<ExperimentRecord>> records =
      RunEstimationExperiment(config);
  if (!records.ok()) return records.status();

  std::ostringstream text;
  if (flags.summary) {
    absl::StatusOr<std::vector<SummaryRow>> rows = Summarize(*records);
    if (!rows.ok()) return rows.status();
    if (format == Format::kJson) {
      WriteSummaryJsonl(text, *rows);
    } else {
      WriteSummaryCsv(text, *rows);
    }
  } else if (format == Format::kJson) {
    WriteRecordsJsonl(text, *records);
  } else {
    WriteRecordsCsv(text, *records);
  }
  return text.str();
}

}  // namespace

int RunCli(std::span<const std::string> args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Gaussian mechanism calibration, denoising and benchmarks",
               "gaussdp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gaussdp 0.1.0");

  // One slot per subcommand: default_val writes its target immediately, so a
  // shared variable would end up holding the last registered default.
  std::map<const CLI::App*, Format> formats;
  std::string output_path;
  auto add_common = [&](CLI::App* sub, Format default_format) {
    sub->add_option("--format", formats[sub], "Output format")
        ->transform(CLI::CheckedTransformer(kFormatNames, CLI::ignore_case))
        ->default_val(default_format == Format::kPlain
                          ? "plain"
                          : (default_format == Format::kJson ? "json" : "csv"));
    sub->add_option("--output,-o", output_path,
                    "Output file (default stdout); relative paths resolve "
                    "against $GAUSSDP_OUTPUT_DIR when set");
  };

  // calibrate
  CalibrateFlags calibrate_flags;
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Noise scale for a privacy budget");
  calibrate->add_option("--mechanism", calibrate_flags.mechanism)
      ->check(CLI::IsMember({"analytic", "classical", "laplace"}))
      ->capture_default_str();
  calibrate->add_option("--epsilon", calibrate_flags.epsilon)->required();
  calibrate->add_option("--delta", calibrate_flags.delta);
  calibrate->add_option("--sensitivity", calibrate_flags.sensitivity,
                        "L2 sensitivity (L1 for laplace)")
      ->capture_default_str();
  calibrate->add_option("--tolerance", calibrate_flags.tolerance)
      ->capture_default_str();
  add_common(calibrate, Format::kPlain);

  // profile
  ProfileFlags profile_flags;
  CLI::App* profile =
      app.add_subcommand("profile", "Smallest delta met by a given sigma");
  profile->add_option("--epsilon", profile_flags.epsilon)->required();
  profile->add_option("--sigma", profile_flags.sigma)->required();
  profile->add_option("--sensitivity", profile_flags.sensitivity)
      ->capture_default_str();
  add_common(profile, Format::kPlain);

  // perturb
  PerturbFlags perturb_flags;
  CLI::App* perturb =
      app.add_subcommand("perturb", "Release a noisy query answer");
  perturb->add_option("--input,-i", perturb_flags.input,
                      "Records (mean: one row per line) or labels 1..d")
      ->required();
  perturb->add_option("--query", perturb_flags.query)
      ->check(CLI::IsMember({"mean", "histogram"}))
      ->capture_default_str();
  perturb->add_option("--d", perturb_flags.d, "Number of histogram bins");
  perturb->add_option("--mechanism", perturb_flags.mechanism)
      ->check(CLI::IsMember({"analytic", "classical", "laplace", "none"}))
      ->capture_default_str();
  perturb->add_option("--epsilon", perturb_flags.epsilon);
  perturb->add_option("--delta", perturb_flags.delta);
  perturb->add_option("--seed", perturb_flags.seed)->capture_default_str();
  perturb->add_option("--tolerance", perturb_flags.tolerance)
      ->capture_default_str();
  perturb->add_option("--output,-o", output_path, "Release file");

  // denoise
  DenoiseFlags denoise_flags;
  CLI::App* denoise =
      app.add_subcommand("denoise", "Post-process a Gaussian release");
  denoise->add_option("--release,-r", denoise_flags.release)->required();
  denoise->add_option("--estimator", denoise_flags.estimator)
      ->check(CLI::IsMember({"bayes", "js", "soft"}))
      ->required();
  denoise->add_option("--w2", denoise_flags.w2, "Prior variance (bayes)");
  denoise->add_option("--lambda", denoise_flags.lambda,
                      "Threshold (soft); default sigma sqrt(2 ln d)");
  denoise->add_flag("--positive-part", denoise_flags.positive_part,
                    "Clamp the James-Stein factor at zero");
  add_common(denoise, Format::kJson);

  // bench-sweep
  SweepConfig sweep_config;
  sweep_config.epsilon_grid = {0.1, 0.5, 0.9, 0.99};
  sweep_config.delta_grid = {1e-3, 1e-5, 1e-7};
  std::string sweep_config_file;
  CLI::App* sweep = app.add_subcommand(
      "bench-sweep", "Analytic vs classical sigma over an (eps, delta) grid");
  CLI::Option* sweep_eps =
      sweep->add_option("--epsilons", sweep_config.epsilon_grid)
          ->delimiter(',');
  CLI::Option* sweep_deltas =
      sweep->add_option("--deltas", sweep_config.delta_grid)->delimiter(',');
  CLI::Option* sweep_sens =
      sweep->add_option("--sensitivity", sweep_config.delta_l2);
  CLI::Option* sweep_tol =
      sweep->add_option("--tolerance", sweep_config.tolerance);
  sweep->add_option("--config", sweep_config_file, "JSON config file");
  add_common(sweep, Format::kCsv);

  // bench-estimate
  EstimateFlags estimate_flags;
  std::string estimate_config_file;
  CLI::App* estimate = app.add_subcommand(
      "bench-estimate", "Private mean / histogram estimation experiment");
  std::vector<CLI::Option*> estimate_opts = {
      estimate->add_option("--task", estimate_flags.task)
          ->check(CLI::IsMember({"mean", "histogram"})),
      estimate->add_option("--n", estimate_flags.n),
      estimate->add_option("--d", estimate_flags.d)->delimiter(','),
      estimate->add_option("--epsilon", estimate_flags.epsilon),
      estimate->add_option("--delta", estimate_flags.delta),
      estimate->add_option("--trials", estimate_flags.trials),
      estimate->add_option("--methods", estimate_flags.methods)
          ->delimiter(','),
      estimate->add_option("--seed", estimate_flags.seed),
      estimate->add_option("--threads", estimate_flags.threads),
  };
  estimate->add_flag("--summary", estimate_flags.summary,
                     "Emit per-(method, d) means instead of raw records");
  estimate->add_option("--config", estimate_config_file, "JSON config file");
  add_common(estimate, Format::kCsv);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("gaussdp");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitDomain;
  }

  Format format = Format::kPlain;
  for (const auto& [sub, chosen] : formats) {
    if (sub->parsed()) format = chosen;
  }
  absl::StatusOr<std::string> content = absl::InternalError("no subcommand");
  if (calibrate->parsed()) {
    content = RunCalibrate(calibrate_flags, format);
  } else if (profile->parsed()) {
    content = RunProfile(profile_flags, format);
  } else if (perturb->parsed()) {
    content = RunPerturb(perturb_flags);
  } else if (denoise->parsed()) {
    content = RunDenoise(denoise_flags, format);
  } else if (sweep->parsed()) {
    absl::Status loaded = absl::OkStatus();
    if (!sweep_config_file.empty()) {
      absl::StatusOr<Json> config = ReadJsonFile(sweep_config_file);
      loaded = config.status();
      if (loaded.ok()) {
        for (absl::Status s :
             {FromConfig(*config, "epsilons", sweep_eps,
                         sweep_config.epsilon_grid),
              FromConfig(*config, "deltas", sweep_deltas,
                         sweep_config.delta_grid),
              FromConfig(*config, "sensitivity", sweep_sens,
                         sweep_config.delta_l2),
              FromConfig(*config, "tolerance", sweep_tol,
                         sweep_config.tolerance)}) {
          loaded.Update(s);
        }
      }
    }
    content = loaded.ok() ? RunSweep(sweep_config, format)
                          : absl::StatusOr<std::string>(loaded);
  } else if (estimate->parsed()) {
    absl::Status loaded = absl::OkStatus();
    if (!estimate_config_file.empty()) {
      absl::StatusOr<Json> config = ReadJsonFile(estimate_config_file);
      loaded = config.status();
      if (loaded.ok()) {
        // Same order as estimate_opts.
        for (absl::Status s : {
                 FromConfig(*config, "task", estimate_opts[0],
                            estimate_flags.task),
                 FromConfig(*config, "n", estimate_opts[1], estimate_flags.n),
                 FromConfig(*config, "d", estimate_opts[2], estimate_flags.d),
                 FromConfig(*config, "epsilon", estimate_opts[3],
                            estimate_flags.epsilon),
                 FromConfig(*config, "delta", estimate_opts[4],
                            estimate_flags.delta),
                 FromConfig(*config, "trials", estimate_opts[5],
                            estimate_flags.trials),
                 FromConfig(*config, "methods", estimate_opts[6],
                            estimate_flags.methods),
                 FromConfig(*config, "seed", estimate_opts[7],
                            estimate_flags.seed),
                 FromConfig(*config, "threads", estimate_opts[8],
                            estimate_flags.threads),
             }) {
          loaded.Update(s);
        }
      }
    }
    content = loaded.ok() ? RunEstimate(estimate_flags, format)
                          : absl::StatusOr<std::string>(loaded);
  }

  if (!content.ok()) {
    err << "error: " << content.status().message() << "\n";
    return ExitCodeFor(content.status());
  }
  if (absl::Status s = Emit(*content, output_path, out); !s.ok()) {
    err << "error: " << s.message() << "\n";
    return ExitCodeFor(s);
  }
  return kExitOk;
}

}  // namespace gaussdp::cli
