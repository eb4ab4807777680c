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

// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any
// criterion fails. Usage: acceptance_test [path/to/rangepriv]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "random_world.h"
#include "rangepriv/csv.h"
#include "rangepriv/dataio.h"
#include "rangepriv/expr.h"
#include "rangepriv/hypotest.h"
#include "rangepriv/metrics.h"
#include "rangepriv/nset.h"
#include "rangepriv/privacy.h"
#include "rangepriv/uvar.h"

namespace rangepriv {
namespace {

namespace fs = std::filesystem;

// Collects failure details for one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (details_.size() < 5) details_.push_back(what);
  }
  bool ok() const { return failures_ == 0; }
  int failures() const { return failures_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  int failures_ = 0;
  std::vector<std::string> details_;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 means no limit
  std::function<void(Check&)> body;
};

StripPolicy Bmi(double rho) {
  return *StripPolicy::Create(*NSet::FromBox({{0, 200}, {0, 250}}), 1,
                              *BoundaryExpr::Parse("0.003*x2^2", 2), rho);
}

NSet Line(std::initializer_list<Interval> parts) {
  return *NSet::FromIntervals(parts);
}

void HeightExample(Check& c) {
  using Ranges = ConditionalOutputRanges<NSet>;
  const Ranges r = *Ranges::Create(Line({{90, 160}}), Line({{140, 260}}));
  const auto rep = Report(ConsistentTest(r), r);
  c.Expect(rep.performance == std::log(150.0),
           absl::StrCat("performance ", rep.performance, " != ln 150"));
  c.Expect(std::abs(rep.normalized - (-0.1251)) <= 1e-4,
           absl::StrCat("normalized ", rep.normalized));
  const Ranges d = *Ranges::Create(Line({{80, 170}}), Line({{130, 270}}));
  const double doubled =
      PerformanceBound(d) - DifferentialZeroEntropy(d.range());
  c.Expect(std::abs(doubled - (-0.2364)) <= 1e-4,
           absl::StrCat("doubled-noise normalized ", doubled));
  const auto drep = Report(ConsistentTest(d), d);
  c.Expect(std::abs(drep.normalized - doubled) <= 1e-15,
           "doubled-noise consistent test does not attain the bound");
}

// Enumerates every decision vector over [[Y]] and returns |aleph| per test,
// computed from the definition of correctness.
std::vector<std::size_t> AllAlephSizes(const FiniteWorld& w,
                                       const DiscreteSet& outputs) {
  const std::vector<std::string> ys(outputs.elements().begin(),
                                    outputs.elements().end());
  std::vector<std::size_t> sizes;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << ys.size()); ++mask) {
    DecisionMap t;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      t.emplace_back(ys[j], (mask >> j) & 1u ? HypLabel::kP1 : HypLabel::kP0);
    }
    sizes.push_back(CorrectSetByDefinition(w, t)->size());
  }
  return sizes;
}

constexpr int kWorlds = 250;

void ConsistentIsOptimal(Check& c) {
  std::mt19937_64 rng(20130710);
  int with_overlap = 0, full_size = 0;
  for (int k = 0; k < kWorlds; ++k) {
    const FiniteWorld w = test_util::RandomWorld(rng, 10, 6);
    const auto r = *RangesFromWorld(w);
    c.Expect(r.range().size() <= 6, "world exceeds six outputs");
    with_overlap += !r.overlap().empty();
    full_size += r.range().size() == 6;
    const auto bf = *BruteForceOptimum(w);
    const std::vector<std::size_t> sizes = AllAlephSizes(w, r.range());
    const std::size_t best = *std::max_element(sizes.begin(), sizes.end());
    const std::size_t consistent = CorrectSet(ConsistentTest(r), r).size();
    c.Expect(bf.best_correct == consistent && best == consistent,
             absl::StrCat("world ", k, ": brute force ", bf.best_correct,
                          ", definition ", best, ", consistent ", consistent));
  }
  // The sample must exercise ambiguous outputs and the largest ranges.
  c.Expect(with_overlap > kWorlds / 10 && full_size > 0,
           absl::StrCat(with_overlap, " worlds with overlap, ", full_size,
                        " with six outputs"));
}

void NoTestBeatsTheBound(Check& c) {
  std::mt19937_64 rng(20130710);
  for (int k = 0; k < kWorlds; ++k) {
    const FiniteWorld w = test_util::RandomWorld(rng, 10, 6);
    const auto r = *RangesFromWorld(w);
    const std::size_t bound = r.symmetric_difference().size();
    for (std::size_t s : AllAlephSizes(w, r.range())) {
      c.Expect(s <= bound, absl::StrCat("world ", k, ": |aleph| ", s,
                                        " exceeds bound ", bound));
    }
  }
}

NSet RandomUnion(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 10);
  std::uniform_real_distribution<double> pos(0.0, 100.0);
  std::uniform_real_distribution<double> len(0.0, 20.0);
  std::vector<Interval> parts;
  for (int k = count(rng); k > 0; --k) {
    const double lo = pos(rng);
    parts.push_back({lo, lo + len(rng)});
  }
  return *NSet::FromIntervals(parts);
}

double GridMeasure(const NSet& s, double lo, double hi, double step) {
  const long cells = std::lround((hi - lo) / step);
  long inside = 0;
  for (long k = 0; k < cells; ++k) inside += s.Contains(lo + (k + 0.5) * step);
  return inside * step;
}

void SetAlgebra(Check& c) {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 1000; ++k) {
    const NSet a = RandomUnion(rng);
    const NSet b = RandomUnion(rng);
    const double lhs = SymmetricDifference(a, b)->measure();
    const double rhs =
        a.measure() + b.measure() - 2 * Intersect(a, b)->measure();
    c.Expect(std::abs(lhs - rhs) <= 1e-9,
             absl::StrCat("pair ", k, ": ", lhs, " vs ", rhs));
    const NSet d = *SymmetricDifference(a, b);
    if (d.empty()) continue;
    // The step shrinks with the measure so endpoint rounding stays well
    // below the tolerance.
    const double step = std::min(1e-3, 2e-5 * d.measure());
    const double grid = GridMeasure(d, d.parts().front()[0].lo,
                                    d.parts().back()[0].hi, step);
    c.Expect(std::abs(d.measure() - grid) <= 1e-3 * d.measure(),
             absl::StrCat("pair ", k, ": measure ", d.measure(), " grid ", grid));
  }
}

void Figure1(Check& c) {
  const std::vector<double> rhos = LogSpaced(0.01, 1000, 30);
  const auto sweep = *SweepEpsilon(Bmi(1), rhos);
  for (std::size_t k = 1; k < sweep.size(); ++k) {
    c.Expect(sweep[k].epsilon < sweep[k - 1].epsilon,
             absl::StrCat("epsilon not decreasing at rho ", sweep[k].rho));
  }
  for (const PolicyGuarantee& g : sweep) {
    if (g.rho < 10) continue;
    c.Expect(std::abs(g.epsilon * g.rho - 0.01) <= 0.02 * 0.01,
             absl::StrCat("rho ", g.rho, ": epsilon*rho ", g.epsilon * g.rho));
  }
}

double RiemannStrip(double h) {
  const double step = 1e-3;
  const long cells = std::lround(250.0 / step);
  double sum = 0.0;
  for (long k = 0; k < cells; ++k) {
    const double x2 = (k + 0.5) * step;
    const double g = 0.003 * x2 * x2;
    sum += std::max(0.0, std::min(g + h, 200.0) - std::max(g - h, 0.0));
  }
  return sum * step;
}

void Quadrature(Check& c) {
  for (double h : {1.0, 10.0, 50.0}) {
    const double oracle = RiemannStrip(h);
    const double value = StripMeasure(Bmi(1.0 / h))->value;
    c.Expect(std::abs(value - oracle) <= 1e-6 * oracle,
             absl::StrFormat("1/rho=%g: quadrature %.12g oracle %.12g", h,
                             value, oracle));
  }
}

void RhoAccuracy(Check& c) {
  const DataTable t = GenerateFixture(42, 1010);
  const std::size_t weight = t.column_of(0);
  for (double rho : LogSpaced(0.01, 100, 9)) {
    const StripPolicy p = Bmi(rho);
    const auto once = *SanitizeTable(t, p);
    const DataTable& out = once.first;
    for (std::size_t r = 0; r < t.size(); ++r) {
      for (std::size_t col = 0; col < t.header().size(); ++col) {
        if (col == weight) continue;
        c.Expect(out.rows()[r][col] == t.rows()[r][col],
                 absl::StrCat("rho ", rho, " row ", r, ": column ",
                              t.header()[col], " changed"));
      }
      const auto before = t.Point(r);
      const auto after = out.Point(r);
      if (!before) {
        c.Expect(out.rows()[r] == t.rows()[r],
                 absl::StrCat("row ", r, " with a missing cell was changed"));
        continue;
      }
      double d2 = 0;
      for (int k = 0; k < 2; ++k) {
        d2 += ((*after)[k] - (*before)[k]) * ((*after)[k] - (*before)[k]);
      }
      c.Expect(std::sqrt(d2) <= 1.0 / rho,
               absl::StrCat("rho ", rho, " row ", r, ": moved ", std::sqrt(d2)));
    }
    const auto twice = *SanitizeTable(out, p);
    c.Expect(TableToCsv(twice.first) == TableToCsv(out),
             absl::StrCat("rho ", rho, ": sanitizing twice changed the table"));
  }
}

void UtilityBound(Check& c) {
  const DataTable t = GenerateFixture(42, 1010);
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (const auto x = t.Point(r)) {
      nearest = std::min(nearest, std::abs((*x)[0] - 0.003 * (*x)[1] * (*x)[1]));
    }
  }
  std::vector<double> rhos = LogSpaced(0.01, 100, 25);
  const double quiet_rho = 2.0 / nearest;
  rhos.push_back(std::max(quiet_rho, rhos.back() * 2));
  const auto runs = *UtilityCurve(t, Bmi(1), rhos);
  for (const UtilityRun& run : runs) {
    const UtilityCurvePoint& pt = run.point;
    const double bound =
        static_cast<double>(pt.rows_modified) / pt.rows_total / pt.rho;
    c.Expect(std::abs(pt.mean_diff) <= bound,
             absl::StrCat("rho ", pt.rho, ": |mean_diff| ", pt.mean_diff,
                          " > ", bound));
    c.Expect(pt.kl >= 0, absl::StrCat("rho ", pt.rho, ": kl ", pt.kl));
    const double self = *KlDivergence(run.original, run.original, 1e-9);
    c.Expect(std::abs(self) <= 1e-12, absl::StrCat("KL(P,P) = ", self));
  }
  const UtilityCurvePoint& quiet = runs.back().point;
  c.Expect(quiet.rows_modified == 0 && quiet.mean_diff == 0.0 && quiet.kl == 0.0,
           absl::StrCat("no-modification regime: modified ", quiet.rows_modified,
                        " mean_diff ", quiet.mean_diff, " kl ", quiet.kl));
}

void Parser(Check& c) {
  const auto g = BoundaryExpr::Parse("0.003*x2^2", 2);
  const double h100[] = {0, 100};
  const double h250[] = {0, 250};
  c.Expect(g.ok() && *g->Eval(h100) == 30.0, "g(100) != 30");
  c.Expect(g.ok() && *g->Eval(h250) == 187.5, "g(250) != 187.5");
  const double none[] = {0};
  c.Expect(*BoundaryExpr::Parse("2+3*4", 1)->Eval(none) == 14.0, "2+3*4");
  c.Expect(*BoundaryExpr::Parse("2^3^2", 1)->Eval(none) == 512.0, "2^3^2");
  const std::pair<const char*, const char*> bad[] = {
      {"x1 +", "position 5"}, {"(x1", "position 4"}, {"2 $ 3", "position 3"}};
  for (const auto& [src, where] : bad) {
    const auto e = BoundaryExpr::Parse(src, 2);
    c.Expect(!e.ok() && std::string(e.status().message()).find(
                            absl::StrCat("syntax error at ", where)) !=
                            std::string::npos,
             absl::StrCat("\"", src, "\" should fail at ", where));
  }
}

// Runs the CLI with `args` (paths relative to `dir`) and returns its exit
// status.
int Shell(const std::string& cli, const fs::path& dir, const std::string& args) {
  const std::string cmd = absl::StrCat("cd '", dir.string(), "' && '", cli,
                                       "' ", args, " > stdout.txt 2> stderr.txt");
  return std::system(cmd.c_str());
}

// Every regular file under `dir`, relative path -> contents.
std::vector<std::pair<std::string, std::string>> Snapshot(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    out.emplace_back(fs::relative(e.path(), dir).string(),
                     *ReadFile(e.path().string()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Determinism(Check& c, const std::string& cli) {
  if (cli.empty()) {
    c.Expect(false, "path to the rangepriv executable was not given");
    return;
  }
  const fs::path root = fs::temp_directory_path() /
                        absl::StrCat("rangepriv_acceptance_", ::getpid());
  const std::pair<const char*, const char*> commands[] = {
      {"fixture", "fixture --seed 42 --rows 1010 --output fixture.csv"},
      {"sanitize",
       "sanitize --config policy.json --input fixture.csv --output out.csv"},
      {"sweep", "sweep --config policy.json --rho-range 0.01:1000:30 --output sweep.csv"},
      {"test", "test --config height.json --output test.json"},
      {"test-world", "test --config world.json"},
      {"metrics",
       "metrics --config policy.json --input fixture.csv --output m "
       "--rho-range 0.01:100:7"},
  };
  std::vector<std::pair<std::string, std::string>> snaps[2];
  for (int run = 0; run < 2; ++run) {
    const fs::path dir = root / absl::StrCat("run", run);
    fs::remove_all(dir);
    fs::create_directories(dir);
    WriteFileAtomic((dir / "policy.json").string(),
                    R"({"box":[[0,200],[0,250]],"protected_index":1,)"
                    R"("boundary":"0.003*x2^2","rho":0.1})")
        .IgnoreError();
    WriteFileAtomic((dir / "height.json").string(),
                    R"({"p0":[[90,160]],"p1":[[140,260]],"tie_rule":"p0"})")
        .IgnoreError();
    WriteFileAtomic((dir / "world.json").string(),
                    R"({"omega":["a","b","c","d","e"],"X":[1,2,3,4,5],)"
                    R"("Y":["u","v","v","w","x"],"H":["p0","p0","p1","p1","p0"]})")
        .IgnoreError();
    for (const auto& [name, args] : commands) {
      const int status = Shell(cli, dir, args);
      c.Expect(status == 0, absl::StrCat(name, " exited with ", status));
      // Keep each command's stdout next to its files.
      fs::rename(dir / "stdout.txt", dir / absl::StrCat(name, ".stdout"));
      fs::remove(dir / "stderr.txt");
    }
    snaps[run] = Snapshot(dir);
  }
  c.Expect(snaps[0].size() == snaps[1].size(), "runs produced different files");
  for (std::size_t k = 0; k < std::min(snaps[0].size(), snaps[1].size()); ++k) {
    c.Expect(snaps[0][k] == snaps[1][k],
             absl::StrCat(snaps[0][k].first, " differs between runs"));
  }
  c.Expect(snaps[0].size() >= 15, absl::StrCat("only ", snaps[0].size(),
                                               " files produced"));
  fs::remove_all(root);
}

}  // namespace
}  // namespace rangepriv

int main(int argc, char** argv) {
  using namespace rangepriv;
  const std::string cli =
      argc > 1 ? std::filesystem::absolute(argv[1]).string() : "";
  const Criterion criteria[] = {
      {1, "height example: ln 150, -0.1251 and -0.2364", 1.0, HeightExample},
      {2, "consistent test optimal on random finite worlds", 10.0,
       ConsistentIsOptimal},
      {3, "no test exceeds the symmetric-difference bound", 0.0,
       NoTestBeatsTheBound},
      {4, "set-algebra identities and grid measure oracle", 0.0, SetAlgebra},
      {5, "epsilon decreasing, epsilon*rho -> 0.01", 5.0, Figure1},
      {6, "strip measure matches Riemann oracle", 0.0, Quadrature},
      {7, "sanitized perturbation <= 1/rho, idempotent", 0.0, RhoAccuracy},
      {8, "utility bound, KL properties, no-op regime", 0.0, UtilityBound},
      {9, "boundary expression parser", 0.0, Parser},
      {10, "byte-identical CLI outputs across runs", 0.0,
       [&cli](Check& c) { Determinism(c, cli); }},
  };
  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    const auto start = std::chrono::steady_clock::now();
    cr.body(check);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    if (cr.time_limit_s > 0 && secs >= cr.time_limit_s) {
      check.Expect(false, absl::StrFormat("took %.3f s, limit %.0f s", secs,
                                          cr.time_limit_s));
    }
    std::printf("%s [%d] %s (%.3f s)\n", check.ok() ? "PASS" : "FAIL", cr.id,
                cr.name, secs);
    for (const std::string& d : check.details()) std::printf("    %s\n", d.c_str());
    if (!check.ok()) ++failed;
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
