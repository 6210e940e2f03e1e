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

#include "gaussdp/calibrate.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace gaussdp {
namespace {

using internal::LogPhi;
using internal::Phi;

// e^eps * Phi(t) without forming e^eps on its own.
double ExpTimesPhi(double epsilon, double t) {
  return std::exp(epsilon + LogPhi(t));
}

double Profile(double epsilon, double sigma, double delta_l2) {
  const double a = delta_l2 / (2.0 * sigma);
  if (epsilon == 0.0) {
    // Phi(a) - Phi(-a), without the cancellation near a = 0.
    return std::erf(a * M_SQRT1_2);
  }
  const double b = epsilon * sigma / delta_l2;
  const double value = Phi(a - b) - ExpTimesPhi(epsilon, -a - b);
  return std::clamp(value, 0.0, 1.0);
}

absl::Status CheckPositiveFinite(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    return absl::InvalidArgumentError(
        absl::StrCat(name, " must be positive and finite, got ", value));
  }
  return absl::OkStatus();
}

absl::Status CheckOpenUnitDelta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "delta must lie in (0, 1), got ", delta,
        "; delta = 0 is unattainable with Gaussian noise and delta = 1 needs "
        "no noise"));
  }
  return absl::OkStatus();
}

// Steps sigma up by single ulps until the profile is within budget. Absorbs
// the rounding in the map from the inner root to sigma.
absl::StatusOr<double> EnsureWithinBudget(double epsilon, double sigma,
                                          double delta_l2, double delta,
                                          double& achieved) {
  achieved = Profile(epsilon, sigma, delta_l2);
  for (int step = 0; achieved > delta; ++step) {
    if (step == 1024) {
      return absl::InternalError(absl::StrCat(
          "Calibrated sigma ", sigma, " misses delta = ", delta,
          " (achieved ", achieved, ")"));
    }
    sigma = std::nextafter(sigma, std::numeric_limits<double>::infinity());
    achieved = Profile(epsilon, sigma, delta_l2);
  }
  return sigma;
}

}  // namespace

absl::Status PrivacySpec::Validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be non-negative and finite, got ", epsilon));
  }
  if (!(delta >= 0.0 && delta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1], got ", delta));
  }
  return absl::OkStatus();
}

absl::Status SensitivityProfile::Validate() const {
  if (absl::Status s = CheckPositiveFinite(l2, "L2 sensitivity"); !s.ok()) {
    return s;
  }
  if (!std::isfinite(l1) || !(l1 >= l2)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "L1 sensitivity must be finite and at least the L2 sensitivity (", l2,
        "), got ", l1));
  }
  return absl::OkStatus();
}

std::string_view BranchName(CalibrationBranch branch) {
  switch (branch) {
    case CalibrationBranch::kBPlus:
      return "b_plus";
    case CalibrationBranch::kBMinus:
      return "b_minus";
    case CalibrationBranch::kEpsZero:
      return "eps_zero";
    case CalibrationBranch::kClassicalFormula:
      return "classical_formula";
    case CalibrationBranch::kLaplaceFormula:
      return "laplace_formula";
  }
  return "unknown";
}

absl::StatusOr<double> DeltaZero(double epsilon) {
  if (absl::Status s = CheckPositiveFinite(epsilon, "epsilon"); !s.ok()) {
    return s;
  }
  return 0.5 - ExpTimesPhi(epsilon, -std::sqrt(2.0 * epsilon));
}

absl::StatusOr<double> LowerBoundDeltaThreshold(double epsilon) {
  if (absl::Status s = CheckPositiveFinite(epsilon, "epsilon"); !s.ok()) {
    return s;
  }
  return 0.5 - std::exp(-3.0 * epsilon) / std::sqrt(4.0 * M_PI * epsilon);
}

absl::StatusOr<double> AchievedDelta(double epsilon, double sigma,
                                     double delta_l2) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be non-negative and finite, got ", epsilon));
  }
  if (absl::Status s = CheckPositiveFinite(sigma, "sigma"); !s.ok()) return s;
  if (absl::Status s = CheckPositiveFinite(delta_l2, "L2 sensitivity");
      !s.ok()) {
    return s;
  }
  return Profile(epsilon, sigma, delta_l2);
}

double BPlus(double epsilon, double v) {
  return Phi(std::sqrt(epsilon * v)) -
         ExpTimesPhi(epsilon, -std::sqrt(epsilon * (v + 2.0)));
}

double BMinus(double epsilon, double u) {
  return Phi(-std::sqrt(epsilon * u)) -
         ExpTimesPhi(epsilon, -std::sqrt(epsilon * (u + 2.0)));
}

absl::StatusOr<CalibrationResult> CalibrateAnalytic(const PrivacySpec& spec,
                                                    double delta_l2,
                                                    double tolerance) {
  if (absl::Status s = spec.Validate(); !s.ok()) return s;
  if (absl::Status s = CheckOpenUnitDelta(spec.delta); !s.ok()) return s;
  if (absl::Status s = CheckPositiveFinite(delta_l2, "L2 sensitivity");
      !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckPositiveFinite(tolerance, "tolerance"); !s.ok()) {
    return s;
  }

  const double epsilon = spec.epsilon;
  const double delta = spec.delta;
  BisectionOptions options;
  options.tolerance = tolerance;
  options.value_tolerance = tolerance * delta;

  CalibrationResult result;
  double sigma = 0.0;

  if (epsilon == 0.0) {
    // Solve in sigma / l2 so the tolerance does not depend on the scale of l2.
    auto profile = [](double ratio) {
      return ratio == 0.0 ? 1.0 : std::erf(M_SQRT1_2 / (2.0 * ratio));
    };
    absl::StatusOr<BisectionOutcome> root = BracketAndBisect(
        profile, delta, Monotonicity::kDecreasing, options);
    if (!root.ok()) return root.status();
    result.branch = CalibrationBranch::kEpsZero;
    result.iterations = root->iterations;
    sigma = root->root * delta_l2;
  } else {
    absl::StatusOr<double> delta_zero = DeltaZero(epsilon);
    if (!delta_zero.ok()) return delta_zero.status();
    result.delta_zero = *delta_zero;

    double alpha = 0.0;
    if (delta >= *delta_zero) {
      absl::StatusOr<BisectionOutcome> root = BracketAndBisect(
          [epsilon](double v) { return BPlus(epsilon, v); }, delta,
          Monotonicity::kIncreasing, options);
      if (!root.ok()) return root.status();
      const double v = root->root;
      // sqrt(1 + v/2) - sqrt(v/2), written to avoid cancellation at large v.
      alpha = 1.0 / (std::sqrt(1.0 + 0.5 * v) + std::sqrt(0.5 * v));
      result.branch = CalibrationBranch::kBPlus;
      result.iterations = root->iterations;
    } else {
      absl::StatusOr<BisectionOutcome> root = BracketAndBisect(
          [epsilon](double u) { return BMinus(epsilon, u); }, delta,
          Monotonicity::kDecreasing, options);
      if (!root.ok()) return root.status();
      const double u = root->root;
      alpha = std::sqrt(1.0 + 0.5 * u) + std::sqrt(0.5 * u);
      result.branch = CalibrationBranch::kBMinus;
      result.iterations = root->iterations;
    }
    sigma = alpha * delta_l2 / std::sqrt(2.0 * epsilon);
  }

  absl::StatusOr<double> safe =
      EnsureWithinBudget(epsilon, sigma, delta_l2, delta,
                         result.achieved_delta);
  if (!safe.ok()) return safe.status();
  result.sigma = *safe;
  if (epsilon > 0.0) {
    result.alpha = result.sigma * std::sqrt(2.0 * epsilon) / delta_l2;
  }
  return result;
}

absl::StatusOr<CalibrationResult> CalibrateClassical(const PrivacySpec& spec,
                                                     double delta_l2) {
  if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "classical Gaussian calibration is only valid for epsilon in (0, 1), "
        "got ",
        spec.epsilon));
  }
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "classical Gaussian calibration is only valid for delta in (0, 1), "
        "got ",
        spec.delta));
  }
  if (absl::Status s = CheckPositiveFinite(delta_l2, "L2 sensitivity");
      !s.ok()) {
    return s;
  }
  CalibrationResult result;
  result.branch = CalibrationBranch::kClassicalFormula;
  result.sigma =
      delta_l2 * std::sqrt(2.0 * std::log(1.25 / spec.delta)) / spec.epsilon;
  result.alpha = result.sigma * std::sqrt(2.0 * spec.epsilon) / delta_l2;
  absl::StatusOr<double> delta_zero = DeltaZero(spec.epsilon);
  if (!delta_zero.ok()) return delta_zero.status();
  result.delta_zero = *delta_zero;
  result.achieved_delta = Profile(spec.epsilon, result.sigma, delta_l2);
  return result;
}

absl::StatusOr<CalibrationResult> CalibrateLaplace(double epsilon,
                                                   double delta_l1) {
  if (absl::Status s = CheckPositiveFinite(epsilon, "epsilon"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckPositiveFinite(delta_l1, "L1 sensitivity");
      !s.ok()) {
    return s;
  }
  CalibrationResult result;
  result.branch = CalibrationBranch::kLaplaceFormula;
  result.sigma = delta_l1 / epsilon;
  result.achieved_delta = 0.0;
  return result;
}

absl::StatusOr<PrivacyLossTails> PrivacyLossTailProbabilities(double epsilon,
                                                              double distance,
                                                              double sigma) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon must be non-negative and finite, got ", epsilon));
  }
  if (absl::Status s = CheckPositiveFinite(distance, "distance"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckPositiveFinite(sigma, "sigma"); !s.ok()) return s;
  const double a = distance / (2.0 * sigma);
  const double b = epsilon * sigma / distance;
  return PrivacyLossTails{.upper = Phi(a - b), .lower = Phi(-a - b)};
}

}  // namespace gaussdp
