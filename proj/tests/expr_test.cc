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

#include "rangepriv/expr.h"

#include <cmath>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace rangepriv {
namespace {

using ::testing::HasSubstr;

double EvalAt(const std::string& src, std::vector<double> point) {
  const auto e = BoundaryExpr::Parse(src, static_cast<int>(point.size()));
  EXPECT_TRUE(e.ok()) << e.status();
  const auto v = e->Eval(point);
  EXPECT_TRUE(v.ok()) << v.status();
  return *v;
}

std::string ParseError(const std::string& src, int dim = 2) {
  const auto e = BoundaryExpr::Parse(src, dim);
  EXPECT_FALSE(e.ok()) << src;
  return std::string(e.status().message());
}

TEST(BoundaryExprTest, ObesityBoundary) {
  EXPECT_EQ(EvalAt("0.003*x2^2", {0, 100}), 30.0);
  EXPECT_EQ(EvalAt("0.003*x2^2", {0, 250}), 187.5);
  EXPECT_EQ(BoundaryExpr::Parse("0.003 * x2^2", 2)->Variables(),
            std::vector<int>{2});
}

TEST(BoundaryExprTest, Precedence) {
  EXPECT_EQ(EvalAt("2+3*4", {0}), 14.0);
  EXPECT_EQ(EvalAt("2^3^2", {0}), 512.0);
  EXPECT_EQ(EvalAt("(2+3)*4", {0}), 20.0);
  EXPECT_EQ(EvalAt("-2^2", {0}), -4.0);
  EXPECT_EQ(EvalAt("10-4-3", {0}), 3.0);
  EXPECT_EQ(EvalAt("12/3/2", {0}), 2.0);
  EXPECT_EQ(EvalAt("2*-3", {0}), -6.0);
}

TEST(BoundaryExprTest, Functions) {
  EXPECT_EQ(EvalAt("min(x1, 2*x2)", {4, 1}), 2.0);
  EXPECT_EQ(EvalAt("max(x1, x2, 7)", {4, 1}), 7.0);
  EXPECT_EQ(EvalAt("sqrt(x1)", {16, 0}), 4.0);
  EXPECT_EQ(EvalAt("abs(x1 - x2)", {1, 4}), 3.0);
  EXPECT_EQ(EvalAt("1.5e2 + .5", {0}), 150.5);
}

TEST(BoundaryExprTest, ZeroPointIsFinite) {
  for (const char* src : {"0.003*x2^2", "min(x1,x2)+3", "sqrt(abs(x1))-x2^3"}) {
    const double v = EvalAt(src, {0, 0});
    EXPECT_TRUE(std::isfinite(v)) << src;
  }
}

TEST(BoundaryExprTest, PositionedSyntaxErrors) {
  EXPECT_THAT(ParseError("x1 +"), HasSubstr("syntax error at position 5"));
  EXPECT_THAT(ParseError("(x1"), HasSubstr("syntax error at position 4"));
  EXPECT_THAT(ParseError("2 $ 3"), HasSubstr("syntax error at position 3"));
  EXPECT_THAT(ParseError("x1 x2"), HasSubstr("syntax error at position 4"));
  EXPECT_THAT(ParseError(""), HasSubstr("syntax error at position 1"));
  EXPECT_THAT(ParseError("min(x1)"), HasSubstr("syntax error"));
  EXPECT_THAT(ParseError("foo(1)"), HasSubstr("syntax error at position 1"));
}

TEST(BoundaryExprTest, VariableOutOfRange) {
  EXPECT_THAT(ParseError("x3", 2), HasSubstr("position 1"));
  EXPECT_THAT(ParseError("x0", 2), HasSubstr("position 1"));
}

TEST(BoundaryExprTest, EvaluationErrors) {
  const auto div = BoundaryExpr::Parse("1/x1", 1);
  const double zero[] = {0};
  EXPECT_THAT(std::string(div->Eval(zero).status().message()),
              HasSubstr("division by zero"));
  const auto root = BoundaryExpr::Parse("sqrt(x1)", 1);
  const double neg[] = {-1};
  EXPECT_THAT(std::string(root->Eval(neg).status().message()),
              HasSubstr("sqrt"));
  const double two[] = {1, 2};
  EXPECT_FALSE(div->Eval(two).ok());
  const auto big = BoundaryExpr::Parse("10^400", 1);
  EXPECT_FALSE(big->Eval(zero).ok());
}

TEST(BoundaryExprTest, CanonicalTextRoundTrips) {
  for (const char* src :
       {"0.003*x2^2", "2+3*4", "(2+3)*4", "2^3^2", "(2^3)^2", "-(x1-x2)",
        "x1-(x2-3)", "x1/(x2*2)", "min(x1, max(x2, 1), 3)", "-x1^2",
        "(-x1)^2", "sqrt(abs(x1))"}) {
    const auto e = BoundaryExpr::Parse(src, 2);
    ASSERT_TRUE(e.ok()) << src;
    const auto again = BoundaryExpr::Parse(e->ToString(), 2);
    ASSERT_TRUE(again.ok()) << e->ToString();
    EXPECT_EQ(*again, *e) << src << " -> " << e->ToString();
    EXPECT_EQ(again->ToString(), e->ToString());
    const double pt[] = {1.7, 2.3};
    EXPECT_EQ(*again->Eval(pt), *e->Eval(pt)) << src;
  }
}

}  // namespace
}  // namespace rangepriv
