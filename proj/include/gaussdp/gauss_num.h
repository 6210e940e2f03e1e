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

#ifndef GAUSSDP_GAUSS_NUM_H_
#define GAUSSDP_GAUSS_NUM_H_

#include <functional>

#include "absl/status/statusor.h"

namespace gaussdp {

// Default accuracy for every root solve in the library.
inline constexpr double kDefaultTolerance = 1e-12;

// Phi(t) = Pr[N(0,1) <= t], evaluated through erfc so that both tails keep
// full relative precision. Returns an error for non-finite t.
absl::StatusOr<double> StdGaussianCdf(double t);

// log Phi(t). For t <= -5 the value is assembled from the log density and
// the Mills ratio, so it stays finite and accurate far below the point where
// Phi(t) itself underflows.
absl::StatusOr<double> LogStdGaussianCdf(double t);

enum class Monotonicity { kIncreasing, kDecreasing };

struct BisectionOptions {
  // Absolute width of the final bracket.
  double tolerance = kDefaultTolerance;
  // Bisection keeps going until |g(high) - g(low)| <= value_tolerance as
  // well; zero disables the check. Needed where g has unbounded slope at
  // the root, e.g. g(v) = Phi(sqrt(v)) near v = 0.
  double value_tolerance = 0.0;
  // Largest k probed by the doubling phase.
  int max_doublings = 64;
};

struct BisectionOutcome {
  // The bracket endpoint on the feasible side, i.e. with g(root) <= target:
  // bracket_low for increasing g, bracket_high for decreasing g.
  double root = 0.0;
  // Doubling steps plus halvings.
  int iterations = 0;
  double bracket_low = 0.0;
  double bracket_high = 0.0;
};

// Solves for the boundary of {x >= 0 : g(x) <= target}: its supremum when g
// is increasing, its infimum when g is decreasing. The bracket is found by
// probing x = 1, 2, 4, ..., 2^k for the first crossing, then halved until
// its width is at most `tolerance` (or no representable midpoint is left).
// g is never evaluated outside [0, 2^k].
//
// If the set is empty (increasing g with g(0) > target) or all of [0, inf)
// starts feasible (decreasing g with g(0) <= target), the root is 0 with zero
// iterations.
absl::StatusOr<BisectionOutcome> BracketAndBisect(
    const std::function<double(double)>& g, double target,
    Monotonicity direction, const BisectionOptions& options = {});

namespace internal {

// Unchecked versions used on hot paths once inputs are validated.
double Phi(double t);
double LogPhi(double t);

// (1 - Phi(x)) / phi(x) for x >= 0, by Laplace's continued fraction.
double MillsRatio(double x);

}  // namespace internal
}  // namespace gaussdp

#endif  // GAUSSDP_GAUSS_NUM_H_
