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

#ifndef RANGEPRIV_HYPOTEST_H_
#define RANGEPRIV_HYPOTEST_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"
#include "rangepriv/nset.h"
#include "rangepriv/uvar.h"

namespace rangepriv {

// Per-kind glue: how a point is passed, and the log-size used for entropy and
// test performance (natural log of measure for continuous ranges, log2 of
// cardinality for discrete ones).
template <typename Set>
struct RangeTraits;

template <>
struct RangeTraits<NSet> {
  using Point = std::span<const double>;
  static double LogSize(const NSet& s);
};

template <>
struct RangeTraits<DiscreteSet> {
  using Point = const std::string&;
  static double LogSize(const DiscreteSet& s);
};

// The conditional output ranges [[Y|p0]] and [[Y|p1]] together with the
// derived regions every test computation needs.
template <typename Set>
class ConditionalOutputRanges {
 public:
  // Fails if either range is empty or the kinds disagree in dimension.
  static absl::StatusOr<ConditionalOutputRanges> Create(Set given_p0,
                                                        Set given_p1);

  const Set& given_p0() const { return given_p0_; }
  const Set& given_p1() const { return given_p1_; }
  // [[Y]] = [[Y|p0]] u [[Y|p1]].
  const Set& range() const { return range_; }
  const Set& only_p0() const { return only_p0_; }
  const Set& only_p1() const { return only_p1_; }
  const Set& overlap() const { return overlap_; }
  // [[Y|p0]] symmetric-difference [[Y|p1]].
  const Set& symmetric_difference() const { return symdiff_; }

 private:
  ConditionalOutputRanges() = default;

  Set given_p0_, given_p1_, range_, only_p0_, only_p1_, overlap_, symdiff_;
};

// What the observation says about the hypothesis, independent of the test.
enum class Verdict { kP0, kP1, kAmbiguous };
const char* VerdictName(Verdict v);

// A test T: [[Y]] -> {p0, p1}, stored as the region of [[Y]] mapped to p0;
// the rest of [[Y]] maps to p1. `tie_rule` records how the overlap was
// resolved when the test was built by ConsistentTest().
template <typename Set>
class Test {
 public:
  // Any test: `p0_region` is clipped to [[Y]].
  static absl::StatusOr<Test> FromRegion(const ConditionalOutputRanges<Set>& r,
                                         const Set& p0_region,
                                         HypLabel tie_rule = HypLabel::kP0);

  const Set& p0_region() const { return p0_region_; }
  HypLabel tie_rule() const { return tie_rule_; }

  struct Evaluation {
    HypLabel decision;
    Verdict verdict;
  };

  // T(y) plus the three-valued verdict. Fails if y is outside [[Y]].
  absl::StatusOr<Evaluation> Evaluate(const ConditionalOutputRanges<Set>& r,
                                      typename RangeTraits<Set>::Point y) const;

 private:
  Test(Set region, HypLabel tie) : p0_region_(std::move(region)), tie_rule_(tie) {}

  Set p0_region_;
  HypLabel tie_rule_ = HypLabel::kP0;
};

template <typename Set>
struct TestReport {
  Set aleph;
  double performance = 0.0;
  double bound = 0.0;
  // performance - h0(Y).
  double normalized = 0.0;

  // {"aleph", "performance", "bound", "normalized"}; infinities as strings.
  nlohmann::json ToJson() const;
};

// The consistent test: p0 on [[Y|p0]] \ [[Y|p1]], p1 on [[Y|p1]] \ [[Y|p0]],
// `tie_rule` on the overlap.
template <typename Set>
Test<Set> ConsistentTest(const ConditionalOutputRanges<Set>& r,
                         HypLabel tie_rule = HypLabel::kP0);

// T(y) = p_i only if y is in [[Y|p_i]].
template <typename Set>
bool IsConsistent(const Test<Set>& t, const ConditionalOutputRanges<Set>& r);

// aleph(T): outputs lying in exactly one conditional range whose label T
// reproduces. Overlap outputs are never correct.
template <typename Set>
Set CorrectSet(const Test<Set>& t, const ConditionalOutputRanges<Set>& r);

// log size of aleph(T); -inf when aleph is null.
template <typename Set>
double Performance(const Test<Set>& t, const ConditionalOutputRanges<Set>& r);

// log size of the symmetric difference: no test can do better.
template <typename Set>
double PerformanceBound(const ConditionalOutputRanges<Set>& r);

template <typename Set>
TestReport<Set> Report(const Test<Set>& t, const ConditionalOutputRanges<Set>& r);

// [[Y|p0]], [[Y|p1]] read off a finite world.
absl::StatusOr<ConditionalOutputRanges<DiscreteSet>> RangesFromWorld(
    const FiniteWorld& w);

// A decision for each output label.
using DecisionMap = std::vector<std::pair<std::string, HypLabel>>;

// aleph(T) straight from its definition: y is correct iff the hypothesis
// range over every X compatible with y is exactly {T(y)}. Used as an oracle;
// shares no code with CorrectSet().
absl::StatusOr<DiscreteSet> CorrectSetByDefinition(const FiniteWorld& w,
                                                   const DecisionMap& decision);

struct BruteForceResult {
  // Sorted output labels; witness[k] is the decision for outputs[k].
  std::vector<std::string> outputs;
  std::vector<HypLabel> witness;
  std::size_t best_correct = 0;
  double best_performance = 0.0;
  std::size_t tests_evaluated = 0;
};

inline constexpr std::size_t kDefaultBruteForceCap = 16;

// Evaluates every one of the 2^|[[Y]]| tests against the correctness
// definition. Among maximizers the lexicographically smallest decision vector
// (p0 < p1) is returned. Fails if |[[Y]]| exceeds `cap`.
absl::StatusOr<BruteForceResult> BruteForceOptimum(
    const FiniteWorld& w, std::size_t cap = kDefaultBruteForceCap);

}  // namespace rangepriv

#endif  // RANGEPRIV_HYPOTEST_H_
