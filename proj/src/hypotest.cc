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

#include "rangepriv/hypotest.h"

#include <cmath>
#include <map>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "rangepriv/numfmt.h"
#include "rangepriv/status_macros.h"

namespace rangepriv {
namespace {

// Uniform StatusOr-returning set algebra for both range kinds. Dimensions are
// validated once in ConditionalOutputRanges::Create / Test::FromRegion, after
// which the NSet calls cannot fail.
absl::StatusOr<NSet> Or(const NSet& a, const NSet& b) { return Union(a, b); }
absl::StatusOr<NSet> And(const NSet& a, const NSet& b) { return Intersect(a, b); }
absl::StatusOr<NSet> Minus(const NSet& a, const NSet& b) {
  return Difference(a, b);
}
absl::StatusOr<DiscreteSet> Or(const DiscreteSet& a, const DiscreteSet& b) {
  return Union(a, b);
}
absl::StatusOr<DiscreteSet> And(const DiscreteSet& a, const DiscreteSet& b) {
  return Intersect(a, b);
}
absl::StatusOr<DiscreteSet> Minus(const DiscreteSet& a, const DiscreteSet& b) {
  return Difference(a, b);
}

bool Has(const NSet& s, std::span<const double> y) { return s.Contains(y); }
bool Has(const DiscreteSet& s, const std::string& y) { return s.Contains(y); }

nlohmann::json SetToJson(const NSet& s) { return s.ToJson(); }
nlohmann::json SetToJson(const DiscreteSet& s) { return s.ToJson(); }

}  // namespace

double RangeTraits<NSet>::LogSize(const NSet& s) {
  return DifferentialZeroEntropy(s);
}

double RangeTraits<DiscreteSet>::LogSize(const DiscreteSet& s) {
  if (s.empty()) return -INFINITY;
  return std::log2(static_cast<double>(s.size()));
}

const char* VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kP0:
      return "p0";
    case Verdict::kP1:
      return "p1";
    case Verdict::kAmbiguous:
      return "ambiguous";
  }
  return "ambiguous";
}

template <typename Set>
absl::StatusOr<ConditionalOutputRanges<Set>>
ConditionalOutputRanges<Set>::Create(Set given_p0, Set given_p1) {
  if (given_p0.empty() || given_p1.empty()) {
    return absl::InvalidArgumentError(
        "both conditional output ranges must be nonempty");
  }
  ConditionalOutputRanges r;
  ASSIGN_OR_RETURN(r.range_, Or(given_p0, given_p1));
  ASSIGN_OR_RETURN(r.overlap_, And(given_p0, given_p1));
  ASSIGN_OR_RETURN(r.only_p0_, Minus(given_p0, given_p1));
  ASSIGN_OR_RETURN(r.only_p1_, Minus(given_p1, given_p0));
  ASSIGN_OR_RETURN(r.symdiff_, Or(r.only_p0_, r.only_p1_));
  r.given_p0_ = std::move(given_p0);
  r.given_p1_ = std::move(given_p1);
  return r;
}

template <typename Set>
absl::StatusOr<Test<Set>> Test<Set>::FromRegion(
    const ConditionalOutputRanges<Set>& r, const Set& p0_region,
    HypLabel tie_rule) {
  ASSIGN_OR_RETURN(Set clipped, And(p0_region, r.range()));
  return Test(std::move(clipped), tie_rule);
}

template <typename Set>
absl::StatusOr<typename Test<Set>::Evaluation> Test<Set>::Evaluate(
    const ConditionalOutputRanges<Set>& r,
    typename RangeTraits<Set>::Point y) const {
  if (!Has(r.range(), y)) {
    return absl::OutOfRangeError("observation lies outside the output range");
  }
  Evaluation e;
  e.decision = Has(p0_region_, y) ? HypLabel::kP0 : HypLabel::kP1;
  if (Has(r.only_p0(), y)) {
    e.verdict = Verdict::kP0;
  } else if (Has(r.only_p1(), y)) {
    e.verdict = Verdict::kP1;
  } else {
    e.verdict = Verdict::kAmbiguous;
  }
  return e;
}

template <typename Set>
nlohmann::json TestReport<Set>::ToJson() const {
  return {{"aleph", SetToJson(aleph)},
          {"performance", ExtendedRealToJson(performance)},
          {"bound", ExtendedRealToJson(bound)},
          {"normalized", ExtendedRealToJson(normalized)}};
}

template <typename Set>
Test<Set> ConsistentTest(const ConditionalOutputRanges<Set>& r,
                         HypLabel tie_rule) {
  Set region = tie_rule == HypLabel::kP0 ? r.given_p0() : r.only_p0();
  return *Test<Set>::FromRegion(r, region, tie_rule);
}

template <typename Set>
bool IsConsistent(const Test<Set>& t, const ConditionalOutputRanges<Set>& r) {
  // p0 region inside [[Y|p0]], p1 region inside [[Y|p1]].
  const Set p1_region = *Minus(r.range(), t.p0_region());
  return Minus(t.p0_region(), r.given_p0())->empty() &&
         Minus(p1_region, r.given_p1())->empty();
}

template <typename Set>
Set CorrectSet(const Test<Set>& t, const ConditionalOutputRanges<Set>& r) {
  // Only-p0 outputs are correct exactly when T says p0, only-p1 outputs
  // exactly when T says p1; overlap outputs never are.
  const Set correct_p0 = *And(r.only_p0(), t.p0_region());
  const Set correct_p1 = *Minus(r.only_p1(), t.p0_region());
  return *Or(correct_p0, correct_p1);
}

template <typename Set>
double Performance(const Test<Set>& t, const ConditionalOutputRanges<Set>& r) {
  return RangeTraits<Set>::LogSize(CorrectSet(t, r));
}

template <typename Set>
double PerformanceBound(const ConditionalOutputRanges<Set>& r) {
  return RangeTraits<Set>::LogSize(r.symmetric_difference());
}

template <typename Set>
TestReport<Set> Report(const Test<Set>& t,
                       const ConditionalOutputRanges<Set>& r) {
  TestReport<Set> report;
  report.aleph = CorrectSet(t, r);
  report.performance = RangeTraits<Set>::LogSize(report.aleph);
  report.bound = PerformanceBound(r);
  report.normalized = report.performance - RangeTraits<Set>::LogSize(r.range());
  return report;
}

template class ConditionalOutputRanges<NSet>;
template class ConditionalOutputRanges<DiscreteSet>;
template class Test<NSet>;
template class Test<DiscreteSet>;
template struct TestReport<NSet>;
template struct TestReport<DiscreteSet>;
template Test<NSet> ConsistentTest(const ConditionalOutputRanges<NSet>&,
                                   HypLabel);
template Test<DiscreteSet> ConsistentTest(
    const ConditionalOutputRanges<DiscreteSet>&, HypLabel);
template bool IsConsistent(const Test<NSet>&,
                           const ConditionalOutputRanges<NSet>&);
template bool IsConsistent(const Test<DiscreteSet>&,
                           const ConditionalOutputRanges<DiscreteSet>&);
template NSet CorrectSet(const Test<NSet>&, const ConditionalOutputRanges<NSet>&);
template DiscreteSet CorrectSet(const Test<DiscreteSet>&,
                                const ConditionalOutputRanges<DiscreteSet>&);
template double Performance(const Test<NSet>&,
                            const ConditionalOutputRanges<NSet>&);
template double Performance(const Test<DiscreteSet>&,
                            const ConditionalOutputRanges<DiscreteSet>&);
template double PerformanceBound(const ConditionalOutputRanges<NSet>&);
template double PerformanceBound(const ConditionalOutputRanges<DiscreteSet>&);
template TestReport<NSet> Report(const Test<NSet>&,
                                 const ConditionalOutputRanges<NSet>&);
template TestReport<DiscreteSet> Report(
    const Test<DiscreteSet>&, const ConditionalOutputRanges<DiscreteSet>&);

absl::StatusOr<ConditionalOutputRanges<DiscreteSet>> RangesFromWorld(
    const FiniteWorld& w) {
  ASSIGN_OR_RETURN(DiscreteSet p0,
                   ConditionalRange(w, Selector::kY, Selector::kH, "p0"));
  ASSIGN_OR_RETURN(DiscreteSet p1,
                   ConditionalRange(w, Selector::kY, Selector::kH, "p1"));
  return ConditionalOutputRanges<DiscreteSet>::Create(std::move(p0),
                                                      std::move(p1));
}

namespace {

// [[H | [[X|y]]]] for every y in [[Y]], straight from the definitions.
absl::StatusOr<std::map<std::string, DiscreteSet>> HypothesesPerOutput(
    const FiniteWorld& w) {
  ASSIGN_OR_RETURN(DiscreteSet outputs, MarginalRange(w, Selector::kY));
  std::map<std::string, DiscreteSet> out;
  for (const std::string& y : outputs.elements()) {
    ASSIGN_OR_RETURN(DiscreteSet xs,
                     ConditionalRange(w, Selector::kX, Selector::kY, y));
    out[y] = ConditionalRangeOfSet(w, Selector::kH, Selector::kX, xs);
  }
  return out;
}

}  // namespace

absl::StatusOr<DiscreteSet> CorrectSetByDefinition(const FiniteWorld& w,
                                                   const DecisionMap& decision) {
  ASSIGN_OR_RETURN(auto hyps, HypothesesPerOutput(w));
  std::map<std::string, HypLabel> t(decision.begin(), decision.end());
  DiscreteSet aleph;
  for (const auto& [y, h] : hyps) {
    auto it = t.find(y);
    if (it == t.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("test is not defined at output \"", y, "\""));
    }
    if (h == DiscreteSet{HypLabelName(it->second)}) aleph.Insert(y);
  }
  return aleph;
}

absl::StatusOr<BruteForceResult> BruteForceOptimum(const FiniteWorld& w,
                                                   std::size_t cap) {
  ASSIGN_OR_RETURN(auto hyps, HypothesesPerOutput(w));
  const std::size_t k = hyps.size();
  if (k > cap) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "output range has ", k, " elements; brute force is capped at ", cap));
  }
  // Per output: which single decision (if any) is correct there.
  const DiscreteSet only_p0{"p0"};
  const DiscreteSet only_p1{"p1"};
  std::vector<int> correct_bit(k, -1);
  BruteForceResult result;
  std::size_t i = 0;
  for (const auto& [y, h] : hyps) {
    result.outputs.push_back(y);
    if (h == only_p0) correct_bit[i] = 0;
    if (h == only_p1) correct_bit[i] = 1;
    ++i;
  }

  // mask's most significant of k bits is outputs[0]; 0 means p0, so
  // increasing masks walk decision vectors in lexicographic order.
  const std::uint64_t total = std::uint64_t{1} << k;
  std::size_t best = 0;
  std::uint64_t best_mask = 0;
  bool have_best = false;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::size_t correct = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const int bit = static_cast<int>((mask >> (k - 1 - j)) & 1u);
      if (bit == correct_bit[j]) ++correct;
    }
    if (!have_best || correct > best) {
      best = correct;
      best_mask = mask;
      have_best = true;
    }
  }
  result.tests_evaluated = static_cast<std::size_t>(total);
  result.best_correct = best;
  result.best_performance =
      best == 0 ? -INFINITY : std::log2(static_cast<double>(best));
  for (std::size_t j = 0; j < k; ++j) {
    result.witness.push_back(((best_mask >> (k - 1 - j)) & 1u) ? HypLabel::kP1
                                                               : HypLabel::kP0);
  }
  return result;
}

}  // namespace rangepriv
