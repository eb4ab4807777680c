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

#include "rangepriv/dataio.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>
#include <system_error>

#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "rangepriv/numfmt.h"
#include "rangepriv/status_macros.h"

namespace rangepriv {

absl::StatusOr<std::vector<ColumnMapping>> ParseColumnMap(std::string_view spec) {
  std::vector<ColumnMapping> out;
  const absl::string_view text(spec.data(), spec.size());
  for (absl::string_view item : absl::StrSplit(text, ',', absl::SkipWhitespace())) {
    const std::size_t colon = item.rfind(':');
    if (colon == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("column map entry \"", item, "\" is not name:index"));
    }
    std::string name(absl::StripAsciiWhitespace(item.substr(0, colon)));
    int index = 0;
    if (name.empty() ||
        !absl::SimpleAtoi(item.substr(colon + 1), &index) || index < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("column map entry \"", item, "\" is not name:index"));
    }
    out.push_back({std::move(name), index});
  }
  if (out.empty()) return absl::InvalidArgumentError("column map is empty");
  std::set<int> seen;
  for (const ColumnMapping& m : out) {
    if (m.coordinate > static_cast<int>(out.size()) ||
        !seen.insert(m.coordinate).second) {
      return absl::InvalidArgumentError(absl::StrCat(
          "column map must bind coordinates 1..", out.size(), " exactly once"));
    }
  }
  return out;
}

std::optional<double> ParseNumericCell(std::string_view cell) {
  auto space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!cell.empty() && space(cell.front())) cell.remove_prefix(1);
  while (!cell.empty() && space(cell.back())) cell.remove_suffix(1);
  if (cell.empty()) return std::nullopt;
  if (cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || end != cell.data() + cell.size() ||
      !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

absl::StatusOr<DataTable> DataTable::Create(CsvRow header,
                                            std::vector<CsvRow> rows,
                                            std::vector<ColumnMapping> mapping) {
  DataTable t;
  t.columns_.assign(mapping.size(), 0);
  for (const ColumnMapping& m : mapping) {
    auto it = std::find(header.begin(), header.end(), m.column);
    if (it == header.end()) {
      return absl::NotFoundError(
          absl::StrCat("column \"", m.column, "\" not found in header"));
    }
    if (m.coordinate < 1 || m.coordinate > static_cast<int>(mapping.size())) {
      return absl::InvalidArgumentError(
          absl::StrCat("coordinate ", m.coordinate, " out of range"));
    }
    t.columns_[m.coordinate - 1] =
        static_cast<std::size_t>(it - header.begin());
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", r + 1, " has ", rows[r].size(),
                       " fields but the header has ", header.size()));
    }
    std::vector<std::optional<double>> c(mapping.size());
    for (std::size_t k = 0; k < mapping.size(); ++k) {
      c[k] = ParseNumericCell(rows[r][t.columns_[k]]);
    }
    t.coords_.push_back(std::move(c));
  }
  t.header_ = std::move(header);
  t.rows_ = std::move(rows);
  t.mapping_ = std::move(mapping);
  return t;
}

std::optional<std::vector<double>> DataTable::Point(std::size_t row) const {
  std::vector<double> x;
  x.reserve(coords_[row].size());
  for (const std::optional<double>& v : coords_[row]) {
    if (!v.has_value()) return std::nullopt;
    x.push_back(*v);
  }
  return x;
}

std::size_t DataTable::rows_missing() const {
  return static_cast<std::size_t>(std::count_if(
      coords_.begin(), coords_.end(), [](const auto& c) {
        return std::any_of(c.begin(), c.end(),
                           [](const auto& v) { return !v.has_value(); });
      }));
}

void DataTable::SetCoordinate(std::size_t row, int k, double value) {
  rows_[row][columns_[k]] = FormatReal(value);
  coords_[row][k] = value;
}

absl::StatusOr<DataTable> ParseTable(std::string_view csv_text,
                                     std::vector<ColumnMapping> mapping,
                                     MissingPolicy) {
  ASSIGN_OR_RETURN(std::vector<CsvRow> records, ParseCsv(csv_text));
  if (records.empty()) return absl::InvalidArgumentError("CSV has no header");
  CsvRow header = std::move(records.front());
  std::vector<CsvRow> rows;
  for (std::size_t r = 1; r < records.size(); ++r) {
    // Blank lines carry no record.
    if (records[r].size() == 1 && records[r][0].empty()) continue;
    rows.push_back(std::move(records[r]));
  }
  ASSIGN_OR_RETURN(DataTable t, DataTable::Create(std::move(header),
                                                  std::move(rows),
                                                  std::move(mapping)));
  if (t.size() == t.rows_missing()) {
    return absl::InvalidArgumentError(
        "no usable rows: every row misses a mapped value");
  }
  return t;
}

absl::StatusOr<DataTable> LoadCsv(const std::string& path,
                                  std::vector<ColumnMapping> mapping,
                                  MissingPolicy missing) {
  ASSIGN_OR_RETURN(std::string text, ReadFile(path));
  absl::StatusOr<DataTable> t = ParseTable(text, std::move(mapping), missing);
  if (!t.ok()) {
    return absl::Status(t.status().code(),
                        absl::StrCat(path, ": ", t.status().message()));
  }
  return t;
}

std::string TableToCsv(const DataTable& t) {
  std::string out = FormatCsvRow(t.header());
  for (const CsvRow& row : t.rows()) out += FormatCsvRow(row);
  return out;
}

absl::Status WriteCsv(const DataTable& t, const std::string& path) {
  return WriteFileAtomic(path, TableToCsv(t));
}

namespace {

// Uniform in [0, 1) from the top 53 bits.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Gaussian(std::mt19937_64& rng, double mean, double sd) {
  const double u1 = 1.0 - Uniform(rng);  // (0, 1]
  const double u2 = Uniform(rng);
  return mean + sd * std::sqrt(-2.0 * std::log(u1)) *
                    std::cos(2.0 * 3.14159265358979323846 * u2);
}

double Round1(double v) { return std::round(v * 10.0) / 10.0; }

}  // namespace

DataTable GenerateFixture(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  CsvRow header = {"id", "Age", "Gender", "Height", "Weight"};
  std::vector<CsvRow> rows;
  rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool male = Uniform(rng) < 0.41;
    const int age = 15 + static_cast<int>(Uniform(rng) * 16.0);
    const double height = Round1(std::clamp(
        Gaussian(rng, male ? 181.0 : 168.0, male ? 7.0 : 6.5), 140.0, 210.0));
    const double bmi = std::clamp(Gaussian(rng, 22.0, 3.2), 15.0, 45.0);
    const double weight =
        Round1(std::clamp(bmi * (height / 100.0) * (height / 100.0), 35.0, 160.0));
    const double gap = Uniform(rng);
    std::string h = FormatReal(height);
    std::string w = FormatReal(weight);
    if (gap < 0.01) h.clear();
    else if (gap < 0.02) w.clear();
    rows.push_back({absl::StrCat(i + 1), absl::StrCat(age),
                    male ? "male" : "female", std::move(h), std::move(w)});
  }
  return *DataTable::Create(std::move(header), std::move(rows),
                            *ParseColumnMap(kDefaultColumnMap));
}

nlohmann::json SanitizationReport::ToJson() const {
  return {{"rows_total", rows_total},
          {"rows_modified", rows_modified},
          {"rows_unmodified", rows_unmodified},
          {"rows_skipped_missing", rows_skipped_missing},
          {"rows_outside_box", rows_outside_box},
          {"max_perturbation", max_perturbation},
          {"epsilon", epsilon},
          {"rho", rho}};
}

absl::StatusOr<std::pair<DataTable, SanitizationReport>> SanitizeTable(
    const DataTable& t, const StripPolicy& p, const QuadratureParams& quad) {
  if (t.dim() != p.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("column map binds ", t.dim(),
                     " coordinates but the policy has ", p.dim()));
  }
  ASSIGN_OR_RETURN(PolicyGuarantee guarantee, EpsilonGuarantee(p, quad));
  SanitizationReport report;
  report.rows_total = t.size();
  report.epsilon = guarantee.epsilon;
  report.rho = p.rho();
  DataTable out = t;
  const int i = p.protected_index() - 1;
  for (std::size_t r = 0; r < t.size(); ++r) {
    std::optional<std::vector<double>> x = t.Point(r);
    if (!x.has_value()) {
      ++report.rows_skipped_missing;
      continue;
    }
    if (!p.InDomain(*x)) ++report.rows_outside_box;
    absl::StatusOr<StripPolicy::Outcome> o = p.Apply(*x);
    if (!o.ok()) {
      return absl::Status(o.status().code(),
                          absl::StrCat("row ", r + 1, ": ", o.status().message()));
    }
    if (!o->in_strip) {
      ++report.rows_unmodified;
      continue;
    }
    ++report.rows_modified;
    report.max_perturbation = std::max(report.max_perturbation, o->perturbation);
    out.SetCoordinate(r, i, o->reported[i]);
  }
  return std::make_pair(std::move(out), report);
}

}  // namespace rangepriv
