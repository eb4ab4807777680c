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
#include <cstdint>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "random_world.h"

namespace rangepriv {
namespace {

using Ranges = ConditionalOutputRanges<NSet>;
using RegionTest = ::rangepriv::Test<NSet>;
using LabelTest = ::rangepriv::Test<DiscreteSet>;

NSet Line(std::initializer_list<Interval> parts) {
  return *NSet::FromIntervals(parts);
}

Ranges HeightRanges() {
  return *Ranges::Create(Line({{90, 160}}), Line({{140, 260}}));
}

TEST(ConsistentTestTest, HeightExampleDecisions) {
  const Ranges r = HeightRanges();
  const auto t = ConsistentTest(r, HypLabel::kP0);
  EXPECT_EQ(t.p0_region(), Line({{90, 160}}));
  EXPECT_TRUE(IsConsistent(t, r));
  const double y150[] = {150};
  const double y200[] = {200};
  const double y100[] = {100};
  EXPECT_EQ(t.Evaluate(r, y150)->decision, HypLabel::kP0);
  EXPECT_EQ(t.Evaluate(r, y150)->verdict, Verdict::kAmbiguous);
  EXPECT_EQ(t.Evaluate(r, y200)->decision, HypLabel::kP1);
  EXPECT_EQ(t.Evaluate(r, y200)->verdict, Verdict::kP1);
  EXPECT_EQ(t.Evaluate(r, y100)->verdict, Verdict::kP0);
  const double outside[] = {300};
  EXPECT_EQ(t.Evaluate(r, outside).status().code(),
            absl::StatusCode::kOutOfRange);
}

TEST(ConsistentTestTest, TieRuleOnlyMovesTheOverlap) {
  const Ranges r = HeightRanges();
  const auto t0 = ConsistentTest(r, HypLabel::kP0);
  const auto t1 = ConsistentTest(r, HypLabel::kP1);
  EXPECT_EQ(t1.p0_region(), Line({{90, 140, true, false}}));
  EXPECT_TRUE(IsConsistent(t1, r));
  EXPECT_EQ(CorrectSet(t0, r), CorrectSet(t1, r));
  EXPECT_EQ(Performance(t0, r), Performance(t1, r));
}

TEST(ConsistentTestTest, DisjointAndIdenticalRanges) {
  const Ranges disjoint = *Ranges::Create(Line({{0, 1}}), Line({{2, 3}}));
  EXPECT_EQ(ConsistentTest(disjoint, HypLabel::kP0).p0_region(),
            ConsistentTest(disjoint, HypLabel::kP1).p0_region());
  EXPECT_EQ(CorrectSet(ConsistentTest(disjoint), disjoint), disjoint.range());

  const Ranges same = *Ranges::Create(Line({{0, 1}}), Line({{0, 1}}));
  EXPECT_EQ(ConsistentTest(same, HypLabel::kP0).p0_region(), same.range());
  EXPECT_TRUE(ConsistentTest(same, HypLabel::kP1).p0_region().empty());
}

TEST(PerformanceTest, HeightExample) {
  const Ranges r = HeightRanges();
  const TestReport<NSet> rep = Report(ConsistentTest(r), r);
  EXPECT_EQ(rep.aleph,
            Line({{90, 140, true, false}, {160, 260, false, true}}));
  EXPECT_DOUBLE_EQ(rep.performance, std::log(150.0));
  EXPECT_DOUBLE_EQ(rep.bound, std::log(150.0));
  EXPECT_NEAR(rep.normalized, -0.1251, 1e-4);
}

TEST(PerformanceTest, DoubledNoiseBound) {
  const Ranges r = *Ranges::Create(Line({{80, 170}}), Line({{130, 270}}));
  const double bound = PerformanceBound(r);
  EXPECT_DOUBLE_EQ(bound, std::log(150.0));
  EXPECT_NEAR(bound - DifferentialZeroEntropy(r.range()), -0.2364, 1e-4);
}

TEST(PerformanceTest, AntiConsistentTestIsNeverCorrect) {
  const Ranges r = HeightRanges();
  const auto anti = *RegionTest::FromRegion(r, r.only_p1());
  EXPECT_FALSE(IsConsistent(anti, r));
  EXPECT_TRUE(CorrectSet(anti, r).empty());
  EXPECT_EQ(Performance(anti, r), -INFINITY);
}

TEST(PerformanceTest, IdenticalRangesHaveNoInformation) {
  const Ranges r = *Ranges::Create(Line({{0, 1}}), Line({{0, 1}}));
  EXPECT_EQ(PerformanceBound(r), -INFINITY);
  EXPECT_EQ(Report(ConsistentTest(r), r).normalized, -INFINITY);
  EXPECT_EQ(Report(ConsistentTest(r), r).ToJson()["normalized"], "-inf");
}

TEST(PerformanceTest, NoRegionBeatsTheBound) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::uniform_real_distribution<double> len(1.0, 40.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = pos(rng), b = pos(rng);
    const Ranges r =
        *Ranges::Create(Line({{a, a + len(rng)}}), Line({{b, b + len(rng)}}));
    const double bound = PerformanceBound(r);
    EXPECT_EQ(Performance(ConsistentTest(r), r), bound);
    for (int k = 0; k < 10; ++k) {
      const double c = pos(rng);
      const auto t = *RegionTest::FromRegion(r, Line({{c, c + len(rng)}}));
      EXPECT_LE(Performance(t, r), bound);
    }
  }
}

TEST(DiscreteTest, CorrectSetMatchesDefinition) {
  // |[[Y]]| = 5: a and b only under p0, c both, d and e only under p1.
  const FiniteWorld w = *FiniteWorld::Create(
      {"w1", "w2", "w3", "w4", "w5", "w6"}, {"1", "2", "3", "4", "5", "6"},
      {"a", "b", "c", "c", "d", "e"},
      {HypLabel::kP0, HypLabel::kP0, HypLabel::kP0, HypLabel::kP1,
       HypLabel::kP1, HypLabel::kP1});
  const auto r = *RangesFromWorld(w);
  EXPECT_EQ(r.range().size(), 5u);
  for (std::uint32_t mask = 0; mask < 32; ++mask) {
    DecisionMap decisions;
    DiscreteSet region;
    int bit = 0;
    for (const std::string& y : r.range().elements()) {
      const bool p0 = ((mask >> bit++) & 1u) == 0;
      decisions.emplace_back(y, p0 ? HypLabel::kP0 : HypLabel::kP1);
      if (p0) region.Insert(y);
    }
    const auto t = *LabelTest::FromRegion(r, region);
    EXPECT_EQ(CorrectSet(t, r), *CorrectSetByDefinition(w, decisions));
  }
  EXPECT_EQ(CorrectSet(ConsistentTest(r), r),
            (DiscreteSet{"a", "b", "d", "e"}));
  EXPECT_DOUBLE_EQ(Performance(ConsistentTest(r), r), 2.0);
}

TEST(DiscreteTest, DefinitionRejectsPartialTests) {
  const FiniteWorld w = *FiniteWorld::Create(
      {"w1", "w2"}, {"1", "2"}, {"a", "b"}, {HypLabel::kP0, HypLabel::kP1});
  EXPECT_FALSE(CorrectSetByDefinition(w, {{"a", HypLabel::kP0}}).ok());
}

TEST(BruteForceTest, SmallWorlds) {
  const FiniteWorld disjoint = *FiniteWorld::Create(
      {"w1", "w2"}, {"1", "2"}, {"a", "b"}, {HypLabel::kP0, HypLabel::kP1});
  const auto d = *BruteForceOptimum(disjoint);
  EXPECT_EQ(d.best_correct, 2u);
  EXPECT_EQ(d.tests_evaluated, 4u);
  EXPECT_EQ(d.witness, (std::vector<HypLabel>{HypLabel::kP0, HypLabel::kP1}));

  const FiniteWorld same = *FiniteWorld::Create(
      {"w1", "w2"}, {"1", "2"}, {"a", "a"}, {HypLabel::kP0, HypLabel::kP1});
  const auto s = *BruteForceOptimum(same);
  EXPECT_EQ(s.best_correct, 0u);
  EXPECT_EQ(s.best_performance, -INFINITY);
  // Ties resolve to the lexicographically smallest vector (all p0).
  EXPECT_EQ(s.witness, std::vector<HypLabel>{HypLabel::kP0});
}

TEST(BruteForceTest, CapIsEnforced) {
  std::vector<std::string> omega, x, y;
  std::vector<HypLabel> h;
  for (int i = 0; i < 5; ++i) {
    omega.push_back("w" + std::to_string(i));
    x.push_back(std::to_string(i));
    y.push_back(std::to_string(i));
    h.push_back(i % 2 ? HypLabel::kP1 : HypLabel::kP0);
  }
  const FiniteWorld w = *FiniteWorld::Create(omega, x, y, h);
  EXPECT_EQ(BruteForceOptimum(w, 4).status().code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_TRUE(BruteForceOptimum(w, 5).ok());
}

TEST(BruteForceTest, ConsistentTestIsOptimalOnRandomWorlds) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const FiniteWorld w = test_util::RandomWorld(rng);
    const auto r = *RangesFromWorld(w);
    const auto bf = *BruteForceOptimum(w);
    const DiscreteSet aleph = CorrectSet(ConsistentTest(r), r);
    EXPECT_EQ(bf.best_correct, aleph.size()) << w.ToJson().dump();
    EXPECT_EQ(bf.best_correct, r.symmetric_difference().size());
  }
}

}  // namespace
}  // namespace rangepriv
