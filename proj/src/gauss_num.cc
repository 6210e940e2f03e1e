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

#include "gaussdp/gauss_num.h"

#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace gaussdp {
namespace internal {
namespace {

constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

// Below this point log Phi switches to the density/Mills-ratio form.
constexpr double kLowerTailSwitch = -5.0;

}  // namespace

double Phi(double t) { return 0.5 * std::erfc(-t * M_SQRT1_2); }

double MillsRatio(double x) {
  // R(x) = 1/(x + 1/(x + 2/(x + 3/(x + ...)))), evaluated with the modified
  // Lentz algorithm. Converges for every x > 0 but is only used for x >= 5,
  // where a few dozen terms reach machine precision.
  constexpr double kTiny = 1e-300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double f = kTiny;
  double c = f;
  double d = 0.0;
  for (int j = 1; j <= 5000; ++j) {
    const double a = (j == 1) ? 1.0 : static_cast<double>(j - 1);
    d = x + a * d;
    if (d == 0.0) d = kTiny;
    c = x + a / c;
    if (c == 0.0) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return f;
}

double LogPhi(double t) {
  if (t <= kLowerTailSwitch) {
    return -0.5 * t * t - kLogSqrtTwoPi + std::log(MillsRatio(-t));
  }
  if (t > 0.0) return std::log1p(-Phi(-t));
  return std::log(Phi(t));
}

}  // namespace internal

absl::StatusOr<double> StdGaussianCdf(double t) {
  if (!std::isfinite(t)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian CDF argument must be finite, got ", t));
  }
  return internal::Phi(t);
}

absl::StatusOr<double> LogStdGaussianCdf(double t) {
  if (!std::isfinite(t)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Gaussian log-CDF argument must be finite, got ", t));
  }
  return internal::LogPhi(t);
}

absl::StatusOr<BisectionOutcome> BracketAndBisect(
    const std::function<double(double)>& g, double target,
    Monotonicity direction, const BisectionOptions& options) {
  if (!(options.tolerance > 0.0) || !std::isfinite(options.tolerance)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "Bisection tolerance must be positive and finite, got ",
        options.tolerance));
  }
  if (options.value_tolerance < 0.0 || std::isnan(options.value_tolerance)) {
    return absl::InvalidArgumentError("Value tolerance must be non-negative.");
  }
  if (options.max_doublings < 0 || options.max_doublings > 1000) {
    return absl::InvalidArgumentError(
        absl::StrCat("Doubling cap must lie in [0, 1000], got ",
                     options.max_doublings));
  }
  if (std::isnan(target)) {
    return absl::InvalidArgumentError("Bisection target is NaN.");
  }

  const bool increasing = direction == Monotonicity::kIncreasing;
  auto evaluate = [&](double x) -> absl::StatusOr<double> {
    const double gx = g(x);
    if (std::isnan(gx)) {
      return absl::InternalError(
          absl::StrCat("Function evaluated to NaN at x = ", x));
    }
    return gx;
  };

  BisectionOutcome out;
  absl::StatusOr<double> g0 = evaluate(0.0);
  if (!g0.ok()) return g0.status();
  const bool zero_feasible = *g0 <= target;
  if (increasing != zero_feasible) {
    // Increasing g already above target at 0, or decreasing g already at or
    // below it: the sup/inf clamps to the boundary.
    return out;
  }

  double low = 0.0;
  double g_low = *g0;
  double high = 0.0;
  double g_high = 0.0;
  bool crossed = false;
  for (int k = 0; k <= options.max_doublings; ++k) {
    const double x = std::ldexp(1.0, k);
    absl::StatusOr<double> gx = evaluate(x);
    if (!gx.ok()) return gx.status();
    ++out.iterations;
    if ((*gx <= target) != zero_feasible) {
      high = x;
      g_high = *gx;
      crossed = true;
      break;
    }
    low = x;
    g_low = *gx;
  }
  if (!crossed) {
    return absl::InternalError(absl::StrCat(
        "No crossing of target ", target, " found in [0, 2^",
        options.max_doublings, "]; last value ", g_low));
  }

  while (true) {
    const bool width_ok = high - low <= options.tolerance;
    const bool value_ok = options.value_tolerance == 0.0 ||
                          std::abs(g_high - g_low) <= options.value_tolerance;
    if (width_ok && value_ok) break;
    const double mid = low + 0.5 * (high - low);
    if (mid <= low || mid >= high) break;  // Bracket is one ulp wide.
    absl::StatusOr<double> gm = evaluate(mid);
    if (!gm.ok()) return gm.status();
    ++out.iterations;
    if ((*gm <= target) == zero_feasible) {
      low = mid;
      g_low = *gm;
    } else {
      high = mid;
      g_high = *gm;
    }
  }

  out.bracket_low = low;
  out.bracket_high = high;
  out.root = increasing ? low : high;
  return out;
}

}  // namespace gaussdp
