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

#ifndef RANGEPRIV_PRIVACY_H_
#define RANGEPRIV_PRIVACY_H_

#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "rangepriv/expr.h"
#include "rangepriv/nset.h"
#include "rangepriv/quadrature.h"

namespace rangepriv {

// Reporting policy that hides which side of the surface
// x_i = g(x_{-i}) a record lies on: every point within 1/rho of the surface
// along coordinate i is reported on the surface, all other points are
// reported unchanged.
//
// The policy is total on R^n; `domain_box` is the range [[X]] over which the
// privacy guarantee is certified.
class StripPolicy {
 public:
  // `protected_index` is 1-based. `boundary` must have the same dimension as
  // the box and must not reference x_i.
  static absl::StatusOr<StripPolicy> Create(NSet domain_box,
                                            int protected_index,
                                            BoundaryExpr boundary, double rho);

  // {"box": [[lo,hi],...], "protected_index": i, "boundary": "<expr>",
  //  "rho": r}. A present `rho_override` replaces (or supplies) "rho".
  static absl::StatusOr<StripPolicy> FromJson(
      const nlohmann::json& j, std::optional<double> rho_override = {});
  nlohmann::json ToJson() const;

  // Same policy at a different accuracy level.
  absl::StatusOr<StripPolicy> WithRho(double rho) const;

  int dim() const { return domain_box_.dim(); }
  int protected_index() const { return protected_index_; }
  const NSet& domain_box() const { return domain_box_; }
  const Box& box() const { return domain_box_.parts().front(); }
  const BoundaryExpr& boundary() const { return boundary_; }
  double rho() const { return rho_; }
  double half_width() const { return 1.0 / rho_; }

  // g(x_{-i}); the protected coordinate of `x` is ignored.
  absl::StatusOr<double> BoundaryAt(std::span<const double> x) const;

  // Closed-box membership.
  bool InDomain(std::span<const double> x) const;

  struct Outcome {
    std::vector<double> reported;
    // |x_i - g(x_{-i})| <= 1/rho: the point was projected onto the surface.
    bool in_strip = false;
    // Euclidean distance between x and the report.
    double perturbation = 0.0;
  };

  absl::StatusOr<Outcome> Apply(std::span<const double> x) const;

 private:
  StripPolicy(NSet box, int index, BoundaryExpr boundary, double rho)
      : domain_box_(std::move(box)),
        protected_index_(index),
        boundary_(std::move(boundary)),
        rho_(rho) {}

  NSet domain_box_;
  int protected_index_;
  BoundaryExpr boundary_;
  double rho_;
};

// Measure of [[X]] intersected with the strip |x_i - g(x_{-i})| <= 1/rho.
//
// Integrates the clamped strip width
//   min(g + 1/rho, hi_i) - max(g - 1/rho, lo_i)   (floored at 0)
// over the free coordinates: adaptive Simpson (nested for two free
// coordinates) split at the clamp crossings when the policy has at most three
// dimensions, randomly shifted Halton otherwise. The value is clamped to
// [0, measure(box)].
absl::StatusOr<QuadratureResult> StripMeasure(const StripPolicy& p,
                                              const QuadratureParams& quad = {});

struct PolicyGuarantee {
  double epsilon = 0.0;
  double rho = 0.0;
  double strip_measure = 0.0;
  double domain_measure = 0.0;
  double quadrature_error_estimate = 0.0;

  nlohmann::json ToJson() const;
};

// epsilon = strip measure / exp(h0(X)) = strip measure / measure(box).
absl::StatusOr<PolicyGuarantee> EpsilonGuarantee(
    const StripPolicy& p, const QuadratureParams& quad = {});

// One guarantee per rho; `rhos` must be positive and ascending.
absl::StatusOr<std::vector<PolicyGuarantee>> SweepEpsilon(
    const StripPolicy& policy, std::span<const double> rhos,
    const QuadratureParams& quad = {});

// Priv = h0(Y) - log size([[Y|p0]] symmetric-difference [[Y|p1]]), natural
// log and measure for NSet, log2 and cardinality for DiscreteSet. +inf when
// the symmetric difference is null. Requires range == p0 u p1, nonempty.
absl::StatusOr<double> PrivMeasure(const NSet& range, const NSet& given_p0,
                                   const NSet& given_p1);
absl::StatusOr<double> PrivMeasure(const DiscreteSet& range,
                                   const DiscreteSet& given_p0,
                                   const DiscreteSet& given_p1);

// priv >= ln(eps), for eps in (0, 1].
absl::StatusOr<bool> IsEpsPrivate(double priv, double eps);

// Largest Euclidean perturbation the policy applies to any of `points`; 0 for
// an empty list.
absl::StatusOr<double> MeasuredAccuracy(
    const StripPolicy& p, const std::vector<std::vector<double>>& points);
absl::StatusOr<bool> IsRhoAccurate(
    const StripPolicy& p, const std::vector<std::vector<double>>& points);

// `n` log-spaced values from lo to hi inclusive.
std::vector<double> LogSpaced(double lo, double hi, int n);

}  // namespace rangepriv

#endif  // RANGEPRIV_PRIVACY_H_
