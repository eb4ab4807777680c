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

#include "rangepriv/cli.h"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "json.hpp"
#include "rangepriv/csv.h"
#include "rangepriv/dataio.h"
#include "rangepriv/hypotest.h"
#include "rangepriv/metrics.h"
#include "rangepriv/numfmt.h"
#include "rangepriv/privacy.h"
#include "rangepriv/status_macros.h"

namespace rangepriv {
namespace {

using nlohmann::json;

int Fail(std::ostream& err, const absl::Status& status) {
  err << "error: " << status.message() << "\n";
  return 1;
}

absl::Status Require(const std::string& value, const char* flag) {
  if (value.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(flag, " is required"));
  }
  return absl::OkStatus();
}

absl::StatusOr<json> ReadJson(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": malformed JSON"));
  }
  return j;
}

absl::StatusOr<StripPolicy> LoadPolicy(const RunConfig& cfg,
                                       bool rho_from_flags) {
  RETURN_IF_ERROR(Require(cfg.config_path, "--config"));
  ASSIGN_OR_RETURN(json j, ReadJson(cfg.config_path));
  std::optional<double> rho;
  if (rho_from_flags) {
    // Sweeps take their rho values from the command line; the config value,
    // if any, is only a placeholder.
    rho = cfg.rhos.empty() ? 1.0 : cfg.rhos.front();
  } else if (cfg.rhos.size() == 1) {
    rho = cfg.rhos.front();
  } else if (cfg.rhos.size() > 1) {
    return absl::InvalidArgumentError("sanitize takes a single --rho value");
  }
  absl::StatusOr<StripPolicy> p = StripPolicy::FromJson(j, rho);
  if (!p.ok()) {
    return absl::Status(p.status().code(), absl::StrCat(cfg.config_path, ": ",
                                                        p.status().message()));
  }
  return p;
}

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

absl::StatusOr<NSet> SetFromSpec(const json& j, const char* field) {
  if (j.is_object()) return NSet::FromJson(j);
  if (j.is_array()) {
    // Shorthand: a list of closed 1-D intervals [[lo, hi], ...].
    std::vector<Interval> parts;
    for (const json& s : j) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number() ||
          !s[1].is_number()) {
        return absl::InvalidArgumentError(
            absl::StrCat("\"", field, "\" intervals must be [lo, hi] pairs"));
      }
      parts.push_back({s[0].get<double>(), s[1].get<double>(), true, true});
    }
    return NSet::FromIntervals(parts);
  }
  return absl::InvalidArgumentError(
      absl::StrCat("\"", field, "\" must be a set object or interval list"));
}

absl::StatusOr<json> RunContinuousTest(const json& spec) {
  for (const char* field : {"p0", "p1"}) {
    if (!spec.contains(field)) {
      return absl::InvalidArgumentError(
          absl::StrCat("test spec: missing field \"", field, "\""));
    }
  }
  ASSIGN_OR_RETURN(NSet p0, SetFromSpec(spec["p0"], "p0"));
  ASSIGN_OR_RETURN(NSet p1, SetFromSpec(spec["p1"], "p1"));
  HypLabel tie = HypLabel::kP0;
  if (spec.contains("tie_rule")) {
    if (!spec["tie_rule"].is_string()) {
      return absl::InvalidArgumentError("test spec: \"tie_rule\" must be a string");
    }
    ASSIGN_OR_RETURN(tie, ParseHypLabel(spec["tie_rule"].get<std::string>()));
  }
  ASSIGN_OR_RETURN(auto ranges, ConditionalOutputRanges<NSet>::Create(
                                    std::move(p0), std::move(p1)));
  const Test<NSet> t = ConsistentTest(ranges, tie);
  json out = Report(t, ranges).ToJson();
  out["kind"] = "continuous";
  out["tie_rule"] = HypLabelName(tie);
  out["h0_Y"] = ExtendedRealToJson(RangeTraits<NSet>::LogSize(ranges.range()));
  return out;
}

absl::StatusOr<json> RunDiscreteTest(const json& spec) {
  ASSIGN_OR_RETURN(FiniteWorld w, FiniteWorld::FromJson(spec));
  HypLabel tie = HypLabel::kP0;
  if (spec.contains("tie_rule") && spec["tie_rule"].is_string()) {
    ASSIGN_OR_RETURN(tie, ParseHypLabel(spec["tie_rule"].get<std::string>()));
  }
  ASSIGN_OR_RETURN(auto ranges, RangesFromWorld(w));
  const Test<DiscreteSet> t = ConsistentTest(ranges, tie);
  const TestReport<DiscreteSet> report = Report(t, ranges);
  json out = report.ToJson();
  out["kind"] = "discrete";
  out["tie_rule"] = HypLabelName(tie);
  out["h0_Y"] =
      ExtendedRealToJson(RangeTraits<DiscreteSet>::LogSize(ranges.range()));
  absl::StatusOr<BruteForceResult> brute = BruteForceOptimum(w);
  if (brute.ok()) {
    json witness = json::object();
    for (std::size_t k = 0; k < brute->outputs.size(); ++k) {
      witness[brute->outputs[k]] = HypLabelName(brute->witness[k]);
    }
    out["brute_force"] = {
        {"best_correct", brute->best_correct},
        {"best_performance", ExtendedRealToJson(brute->best_performance)},
        {"tests_evaluated", brute->tests_evaluated},
        {"witness", witness},
        {"matches_consistent_test",
         brute->best_correct == report.aleph.size()}};
  } else if (brute.status().code() == absl::StatusCode::kResourceExhausted) {
    out["brute_force"] = nullptr;
  } else {
    return brute.status();
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<double>> ParseRhoList(std::string_view spec) {
  std::vector<double> out;
  const absl::string_view text(spec.data(), spec.size());
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    double v = 0.0;
    if (!absl::SimpleAtod(item, &v) || !std::isfinite(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("rho value \"", item, "\" is not a number"));
    }
    if (!(v > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("rho values must be positive, got ", item));
    }
    out.push_back(v);
  }
  if (out.empty()) return absl::InvalidArgumentError("rho list is empty");
  return out;
}

absl::StatusOr<std::vector<double>> ParseRhoRange(std::string_view spec) {
  std::vector<std::string> parts =
      absl::StrSplit(absl::string_view(spec.data(), spec.size()), ':');
  if (parts.size() != 3 && parts.size() != 4) {
    return absl::InvalidArgumentError(
        "--rho-range must look like lo:hi:steps[:log|:lin]");
  }
  double lo = 0.0, hi = 0.0;
  int steps = 0;
  if (!absl::SimpleAtod(parts[0], &lo) || !absl::SimpleAtod(parts[1], &hi) ||
      !absl::SimpleAtoi(parts[2], &steps)) {
    return absl::InvalidArgumentError(
        "--rho-range must look like lo:hi:steps[:log|:lin]");
  }
  const bool log = parts.size() == 3 || parts[3] == "log";
  if (parts.size() == 4 && parts[3] != "log" && parts[3] != "lin") {
    return absl::InvalidArgumentError("--rho-range spacing must be log or lin");
  }
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || steps < 1) {
    return absl::InvalidArgumentError(
        "--rho-range needs 0 < lo <= hi and at least one step");
  }
  if (log) return LogSpaced(lo, hi, steps);
  std::vector<double> out;
  for (int k = 0; k < steps; ++k) {
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * k / (steps - 1));
  }
  return out;
}

int CmdSanitize(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::Status st = Require(cfg.input_path, "--input");
  if (st.ok()) st = Require(cfg.output_path, "--output");
  if (!st.ok()) return Fail(err, st);
  absl::StatusOr<StripPolicy> policy = LoadPolicy(cfg, false);
  if (!policy.ok()) return Fail(err, policy.status());
  absl::StatusOr<std::vector<ColumnMapping>> mapping = ParseColumnMap(cfg.columns);
  if (!mapping.ok()) return Fail(err, mapping.status());
  absl::StatusOr<DataTable> table = LoadCsv(cfg.input_path, *mapping);
  if (!table.ok()) return Fail(err, table.status());
  auto sanitized = SanitizeTable(*table, *policy);
  if (!sanitized.ok()) return Fail(err, sanitized.status());

  json report = sanitized->second.ToJson();
  report["policy"] = policy->ToJson();
  const std::string report_path = cfg.report_path.empty()
                                      ? cfg.output_path + ".report.json"
                                      : cfg.report_path;
  st = WriteCsv(sanitized->first, cfg.output_path);
  if (st.ok()) st = WriteFileAtomic(report_path, Dump(report));
  if (!st.ok()) return Fail(err, st);
  out << Dump(report);
  return 0;
}

int CmdSweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.rhos.empty()) {
    return Fail(err, absl::InvalidArgumentError(
                         "sweep needs --rho or --rho-range"));
  }
  absl::StatusOr<StripPolicy> policy = LoadPolicy(cfg, true);
  if (!policy.ok()) return Fail(err, policy.status());
  auto curve = SweepEpsilon(*policy, cfg.rhos);
  if (!curve.ok()) return Fail(err, curve.status());
  std::string csv = "rho,epsilon,strip_measure,err_estimate\n";
  for (const PolicyGuarantee& g : *curve) {
    absl::StrAppend(&csv, FormatReal(g.rho), ",", FormatReal(g.epsilon), ",",
                    FormatReal(g.strip_measure), ",",
                    FormatReal(g.quadrature_error_estimate), "\n");
  }
  if (cfg.output_path.empty()) {
    out << csv;
    return 0;
  }
  absl::Status st = WriteFileAtomic(cfg.output_path, csv);
  if (!st.ok()) return Fail(err, st);
  return 0;
}

int CmdTest(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::Status st = Require(cfg.config_path, "--config");
  if (!st.ok()) return Fail(err, st);
  absl::StatusOr<json> spec = ReadJson(cfg.config_path);
  if (!spec.ok()) return Fail(err, spec.status());
  if (!spec->is_object()) {
    return Fail(err, absl::InvalidArgumentError("test spec must be an object"));
  }
  absl::StatusOr<json> result = spec->contains("omega")
                                    ? RunDiscreteTest(*spec)
                                    : RunContinuousTest(*spec);
  if (!result.ok()) return Fail(err, result.status());
  if (cfg.output_path.empty()) {
    out << Dump(*result);
    return 0;
  }
  st = WriteFileAtomic(cfg.output_path, Dump(*result));
  if (!st.ok()) return Fail(err, st);
  return 0;
}

int CmdMetrics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  absl::Status st = Require(cfg.input_path, "--input");
  if (st.ok()) st = Require(cfg.output_path, "--output");
  if (st.ok() && cfg.rhos.empty()) {
    st = absl::InvalidArgumentError("metrics needs --rho or --rho-range");
  }
  if (!st.ok()) return Fail(err, st);
  UtilityOptions options;
  options.bins = cfg.bins;
  options.alpha = cfg.alpha;
  if (cfg.kl_direction == "sanitized-to-original") {
    options.direction = KlDirection::kSanitizedToOriginal;
  } else if (cfg.kl_direction != "original-to-sanitized") {
    return Fail(err, absl::InvalidArgumentError(
                         "--kl-direction must be original-to-sanitized or "
                         "sanitized-to-original"));
  }
  if (options.bins < 1 || !(options.alpha > 0.0)) {
    return Fail(err, absl::InvalidArgumentError(
                         "--bins must be >= 1 and --alpha must be positive"));
  }
  absl::StatusOr<StripPolicy> policy = LoadPolicy(cfg, true);
  if (!policy.ok()) return Fail(err, policy.status());
  absl::StatusOr<std::vector<ColumnMapping>> mapping = ParseColumnMap(cfg.columns);
  if (!mapping.ok()) return Fail(err, mapping.status());
  absl::StatusOr<DataTable> table = LoadCsv(cfg.input_path, *mapping);
  if (!table.ok()) return Fail(err, table.status());
  auto runs = UtilityCurve(*table, *policy, cfg.rhos, options);
  if (!runs.ok()) return Fail(err, runs.status());

  std::error_code ec;
  std::filesystem::create_directories(cfg.output_path, ec);
  if (ec) {
    return Fail(err, absl::PermissionDeniedError(absl::StrCat(
                         "cannot create ", cfg.output_path, ": ", ec.message())));
  }
  const std::filesystem::path dir(cfg.output_path);
  std::string curve = "rho,mean_diff,kl,rows_modified,rows_total\n";
  json summary = json::array();
  for (std::size_t k = 0; k < runs->size(); ++k) {
    const UtilityCurvePoint& p = (*runs)[k].point;
    absl::StrAppend(&curve, FormatReal(p.rho), ",", FormatReal(p.mean_diff),
                    ",", FormatReal(p.kl), ",", p.rows_modified, ",",
                    p.rows_total, "\n");
    summary.push_back(UtilityPointToJson(p, options));
    st = WriteFileAtomic(
        (dir / absl::StrFormat("histogram_rho_%03d.csv", k)).string(),
        (*runs)[k].sanitized.ToCsv());
    if (!st.ok()) return Fail(err, st);
  }
  st = WriteFileAtomic((dir / "histogram_original.csv").string(),
                       runs->front().original.ToCsv());
  if (st.ok()) st = WriteFileAtomic((dir / "utility_curve.csv").string(), curve);
  if (st.ok()) st = WriteFileAtomic((dir / "metrics.json").string(), Dump(summary));
  if (!st.ok()) return Fail(err, st);
  out << curve;
  return 0;
}

int CmdFixture(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.rows < 1) {
    return Fail(err, absl::InvalidArgumentError("--rows must be positive"));
  }
  const DataTable t = GenerateFixture(cfg.seed, cfg.rows);
  if (cfg.output_path.empty()) {
    out << TableToCsv(t);
    return 0;
  }
  absl::Status st = WriteCsv(t, cfg.output_path);
  if (!st.ok()) return Fail(err, st);
  return 0;
}

int RunCli(const std::vector<std::string>& argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Deterministic privacy policies against hypothesis-testing "
               "adversaries"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  std::string rho_list;
  std::string rho_range;

  auto add_rho = [&](CLI::App* sub) {
    auto* list = sub->add_option("--rho", rho_list,
                                 "Accuracy level(s), comma separated");
    auto* range = sub->add_option("--rho-range", rho_range,
                                  "lo:hi:steps[:log|:lin]");
    list->excludes(range);
  };

  CLI::App* sanitize = app.add_subcommand("sanitize", "Apply a policy to a CSV");
  sanitize->add_option("--config", cfg.config_path, "Policy JSON")->required();
  sanitize->add_option("--input", cfg.input_path, "Input CSV")->required();
  sanitize->add_option("--output", cfg.output_path, "Sanitized CSV")->required();
  sanitize->add_option("--report", cfg.report_path,
                       "Report JSON (default: <output>.report.json)");
  sanitize->add_option("--columns", cfg.columns, "name:coordinate,...");
  add_rho(sanitize);

  CLI::App* sweep = app.add_subcommand("sweep", "Privacy guarantee versus rho");
  sweep->add_option("--config", cfg.config_path, "Policy JSON")->required();
  sweep->add_option("--output", cfg.output_path, "CSV (default: stdout)");
  add_rho(sweep);

  CLI::App* test = app.add_subcommand("test", "Evaluate the optimal test");
  test->add_option("--config", cfg.config_path, "Test spec JSON")->required();
  test->add_option("--output", cfg.output_path, "Report JSON (default: stdout)");

  CLI::App* metrics = app.add_subcommand("metrics", "Utility curve versus rho");
  metrics->add_option("--config", cfg.config_path, "Policy JSON")->required();
  metrics->add_option("--input", cfg.input_path, "Input CSV")->required();
  metrics->add_option("--output", cfg.output_path, "Output directory")->required();
  metrics->add_option("--columns", cfg.columns, "name:coordinate,...");
  metrics->add_option("--bins", cfg.bins, "Histogram bins per axis");
  metrics->add_option("--alpha", cfg.alpha, "KL smoothing");
  metrics->add_option("--kl-direction", cfg.kl_direction,
                      "original-to-sanitized | sanitized-to-original");
  add_rho(metrics);

  CLI::App* fixture = app.add_subcommand("fixture", "Write a synthetic table");
  fixture->add_option("--seed", cfg.seed, "Generator seed");
  fixture->add_option("--rows", cfg.rows, "Row count");
  fixture->add_option("--output", cfg.output_path, "CSV (default: stdout)");

  std::vector<const char*> cargs;
  for (const std::string& a : argv) cargs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  if (!rho_list.empty()) {
    absl::StatusOr<std::vector<double>> r = ParseRhoList(rho_list);
    if (!r.ok()) return Fail(err, r.status());
    cfg.rhos = *r;
  } else if (!rho_range.empty()) {
    absl::StatusOr<std::vector<double>> r = ParseRhoRange(rho_range);
    if (!r.ok()) return Fail(err, r.status());
    cfg.rhos = *r;
  }

  CLI::App* chosen = app.get_subcommands().front();
  cfg.subcommand = chosen->get_name();
  if (chosen == sanitize) return CmdSanitize(cfg, out, err);
  if (chosen == sweep) return CmdSweep(cfg, out, err);
  if (chosen == test) return CmdTest(cfg, out, err);
  if (chosen == metrics) return CmdMetrics(cfg, out, err);
  return CmdFixture(cfg, out, err);
}

}  // namespace rangepriv
