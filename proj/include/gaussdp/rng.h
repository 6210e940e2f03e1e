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

#ifndef GAUSSDP_RNG_H_
#define GAUSSDP_RNG_H_

#include <cstdint>
#include <optional>
#include <random>

namespace gaussdp {

// SplitMix64 finalizer. Used to derive independent seeds from a base seed
// and stream identifiers.
uint64_t MixBits(uint64_t x);

// Combines a base seed with up to two stream identifiers.
uint64_t DeriveSeed(uint64_t base, uint64_t stream, uint64_t substream = 0);

// Seeded generator whose output is a pure function of the seed on every
// platform: std::mt19937_64 is fully specified, and the variate transforms
// below avoid the implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextBits() { return engine_(); }

  // Uniform on the open interval (0, 1), 53 bits of resolution.
  double Uniform();

  // Polar (Marsaglia) method; caches the second variate of each pair.
  double StandardNormal();

  // Laplace(0, scale) by inversion.
  double Laplace(double scale);

  // Logarithm of a Gamma(shape, 1) variate. Working in log space keeps the
  // tiny variates of shape << 1 (e.g. Dirichlet with alpha = 1/d) from
  // underflowing to zero.
  double LogGamma(double shape);

 private:
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace gaussdp

#endif  // GAUSSDP_RNG_H_
