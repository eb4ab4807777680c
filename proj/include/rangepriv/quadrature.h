// Copyright 2026 The rangepriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RANGEPRIV_QUADRATURE_H_
#define RANGEPRIV_QUADRATURE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace rangepriv {

struct QuadratureParams {
  // Target error relative to the magnitude of the integral.
  double rel_tol = 1e-8;
  // Maximum bisection depth of adaptive Simpson.
  int max_depth = 40;
  // Grid used to locate kinks (clamp crossings) before integrating.
  int breakpoint_samples = 256;
  // Quasi-Monte Carlo: points per randomized replicate, and replicate count.
  std::size_t qmc_points = 1 << 15;
  int qmc_replicates = 8;
  std::uint64_t seed = 20131010;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

using ScalarIntegrand = std::function<absl::StatusOr<double>(double)>;
using VectorIntegrand =
    std::function<absl::StatusOr<double>(std::span<const double>)>;

// Adaptive Simpson on [a, b] with the Lyness acceptance test
// |S(left) + S(right) - S(whole)| <= 15 * tol. Panels that hit `max_depth`
// are accepted and their error is added to the estimate.
absl::StatusOr<QuadratureResult> AdaptiveSimpson(const ScalarIntegrand& f,
                                                 double a, double b,
                                                 double abs_tol, int max_depth);

// Integrates piecewise-smooth `f` over [a, b]: the interval is first split
// at `breaks` (points outside (a, b) are ignored), then each piece is
// integrated by AdaptiveSimpson with a tolerance derived from params.rel_tol.
absl::StatusOr<QuadratureResult> IntegratePiecewise(const ScalarIntegrand& f,
                                                    double a, double b,
                                                    std::vector<double> breaks,
                                                    const QuadratureParams& params);

// Sign changes of `phi` on a uniform grid of `samples` cells over [a, b],
// each refined by bisection to floating-point resolution.
absl::StatusOr<std::vector<double>> FindCrossings(const ScalarIntegrand& phi,
                                                  double a, double b,
                                                  int samples);

// Randomly shifted Halton rule over the box [lo, hi]. The value is the mean
// over params.qmc_replicates independently shifted replicates; the error
// estimate is their standard error. Deterministic for a fixed params.seed.
absl::StatusOr<QuadratureResult> QuasiMonteCarlo(const VectorIntegrand& f,
                                                 std::span<const double> lo,
                                                 std::span<const double> hi,
                                                 const QuadratureParams& params);

}  // namespace rangepriv

#endif  // RANGEPRIV_QUADRATURE_H_
