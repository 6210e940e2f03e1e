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

#ifndef GAUSSDP_CALIBRATE_H_
#define GAUSSDP_CALIBRATE_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "gaussdp/gauss_num.h"

namespace gaussdp {

// Target (epsilon, delta) pair.
struct PrivacySpec {
  double epsilon = 0.0;
  double delta = 0.0;

  // Checks epsilon >= 0 and delta in [0, 1], both finite. Mechanisms narrow
  // this further.
  absl::Status Validate() const;
};

// Global sensitivities of a query. l1 is only consumed by the Laplace
// baseline.
struct SensitivityProfile {
  double l2 = 0.0;
  double l1 = 0.0;

  // l2 > 0, l1 >= l2, both finite.
  absl::Status Validate() const;
};

enum class CalibrationBranch {
  kBPlus,
  kBMinus,
  kEpsZero,
  kClassicalFormula,
  kLaplaceFormula,
};

std::string_view BranchName(CalibrationBranch branch);

struct CalibrationResult {
  // Gaussian standard deviation, or the Laplace scale b for kLaplaceFormula.
  double sigma = 0.0;
  // sigma * sqrt(2 epsilon) / l2; set whenever epsilon > 0.
  std::optional<double> alpha;
  CalibrationBranch branch = CalibrationBranch::kBPlus;
  // delta_0(epsilon); set whenever epsilon > 0 and a Gaussian is used.
  std::optional<double> delta_zero;
  // Smallest delta the returned sigma satisfies at this epsilon. Zero for
  // Laplace, which is pure epsilon-DP.
  double achieved_delta = 0.0;
  int iterations = 0;
};

// delta_0(eps) = Phi(0) - e^eps Phi(-sqrt(2 eps)): the exact delta of a
// Gaussian mechanism with sigma = l2 / sqrt(2 eps), where the two solver
// branches meet.
absl::StatusOr<double> DeltaZero(double epsilon);

// 1/2 - e^{-3 eps} / sqrt(4 pi eps). For 0 < delta below this value any
// (eps, delta)-DP Gaussian perturbation needs sigma >= l2 / sqrt(2 eps).
// Can be negative for small eps; returned unclamped.
absl::StatusOr<double> LowerBoundDeltaThreshold(double epsilon);

// Privacy profile of Gaussian output perturbation:
//   Phi(l2/(2 sigma) - eps sigma/l2) - e^eps Phi(-l2/(2 sigma) - eps sigma/l2),
// the smallest delta for which (eps, delta)-DP holds at this sigma.
absl::StatusOr<double> AchievedDelta(double epsilon, double sigma,
                                     double delta_l2);

// B+(v) = Phi(sqrt(eps v)) - e^eps Phi(-sqrt(eps (v + 2))), increasing in v.
double BPlus(double epsilon, double v);
// B-(u) = Phi(-sqrt(eps u)) - e^eps Phi(-sqrt(eps (u + 2))), decreasing in u.
double BMinus(double epsilon, double u);

// Smallest sigma for which Gaussian output perturbation with L2 sensitivity
// `delta_l2` is (eps, delta)-DP, to within `tolerance` on the inner root and
// on delta. Requires delta in (0, 1) and eps >= 0.
//
// For eps > 0 the root is taken over v (delta >= delta_0) or u (delta <
// delta_0) and mapped to sigma = alpha * l2 / sqrt(2 eps). For eps = 0 the
// profile 2 Phi(l2 / (2 sigma)) - 1 is solved directly in sigma.
absl::StatusOr<CalibrationResult> CalibrateAnalytic(
    const PrivacySpec& spec, double delta_l2,
    double tolerance = kDefaultTolerance);

// sigma = l2 sqrt(2 ln(1.25 / delta)) / eps. Only valid for eps, delta in
// (0, 1); anything else is rejected.
absl::StatusOr<CalibrationResult> CalibrateClassical(const PrivacySpec& spec,
                                                     double delta_l2);

// Laplace scale b = l1 / eps, reported in the sigma field.
absl::StatusOr<CalibrationResult> CalibrateLaplace(double epsilon,
                                                   double delta_l1);

struct PrivacyLossTails {
  // Pr[L >= eps] with L the privacy loss of M(x) against M(x').
  double upper = 0.0;
  // Pr[L' <= -eps].
  double lower = 0.0;
};

// Both tails for neighbouring outputs at distance D:
//   (Phi(D/(2 sigma) - eps sigma/D), Phi(-D/(2 sigma) - eps sigma/D)).
absl::StatusOr<PrivacyLossTails> PrivacyLossTailProbabilities(double epsilon,
                                                              double distance,
                                                              double sigma);

}  // namespace gaussdp

#endif  // GAUSSDP_CALIBRATE_H_
