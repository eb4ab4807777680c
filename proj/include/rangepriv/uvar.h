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

#ifndef RANGEPRIV_UVAR_H_
#define RANGEPRIV_UVAR_H_

#include <cstddef>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "rangepriv/nset.h"

namespace rangepriv {

enum class HypLabel { kP0, kP1 };

// "p0" / "p1".
const char* HypLabelName(HypLabel h);
absl::StatusOr<HypLabel> ParseHypLabel(const std::string& s);

enum class Selector { kX, kY, kH };

// An explicit finite sample space with uncertain variables X, Y and H defined
// on it. Values of X and Y are opaque labels (for points, any canonical
// string such as the JSON text of the point).
//
// Construction enforces Y = g_Y(X) and H = g_H(X): samples that agree on X
// must agree on Y and on H.
class FiniteWorld {
 public:
  static absl::StatusOr<FiniteWorld> Create(std::vector<std::string> omega,
                                            std::vector<std::string> x,
                                            std::vector<std::string> y,
                                            std::vector<HypLabel> h);

  // {"omega": [...], "X": [...], "Y": [...], "H": ["p0","p1",...]}. X and Y
  // entries may be any JSON value; their compact JSON text becomes the label
  // (strings are used verbatim).
  static absl::StatusOr<FiniteWorld> FromJson(const nlohmann::json& j);
  nlohmann::json ToJson() const;

  std::size_t size() const { return omega_.size(); }
  const std::vector<std::string>& omega() const { return omega_; }

  // Value of the selected variable at sample `i`.
  const std::string& Value(Selector var, std::size_t i) const;

 private:
  FiniteWorld() = default;

  std::vector<std::string> omega_;
  std::vector<std::string> x_;
  std::vector<std::string> y_;
  std::vector<std::string> h_;
};

// {var(w) : w in Omega}. Fails on an empty sample space.
absl::StatusOr<DiscreteSet> MarginalRange(const FiniteWorld& w, Selector var);

// {target(w) : given(w) = value}. Fails if `value` is never attained.
absl::StatusOr<DiscreteSet> ConditionalRange(const FiniteWorld& w,
                                             Selector target, Selector given,
                                             const std::string& value);

// Union of ConditionalRange(target | given = v) over every v in `values`.
// Values that are not attained contribute nothing.
DiscreteSet ConditionalRangeOfSet(const FiniteWorld& w, Selector target,
                                  Selector given, const DiscreteSet& values);

// Joint range of (a, b) equals the product of the marginal ranges.
bool IsUnrelated(const FiniteWorld& w, Selector a, Selector b);

// Equivalent criterion: the conditional range of `a` given any attained
// value of `b` is the full marginal range of `a`.
bool IsUnrelatedByConditionals(const FiniteWorld& w, Selector a, Selector b);

// Number of distinct pairs (a(w), b(w)).
std::size_t JointRangeSize(const FiniteWorld& w, Selector a, Selector b);

// h0 = ln(measure); -inf for sets of measure zero.
double DifferentialZeroEntropy(const NSet& s);

// H0 = log2(cardinality). Fails on the empty set.
absl::StatusOr<double> ZeroEntropy(const DiscreteSet& s);

}  // namespace rangepriv

#endif  // RANGEPRIV_UVAR_H_
