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

#ifndef RANGEPRIV_DATAIO_H_
#define RANGEPRIV_DATAIO_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "json.hpp"
#include "rangepriv/csv.h"
#include "rangepriv/privacy.h"

namespace rangepriv {

// Binds a CSV column to a policy coordinate (1-based).
struct ColumnMapping {
  std::string column;
  int coordinate = 1;
};

// Parses "weight:1,height:2". Coordinates must be exactly 1..n, each once.
absl::StatusOr<std::vector<ColumnMapping>> ParseColumnMap(std::string_view spec);

// Mapping used by GenerateFixture() and by the survey data.
inline constexpr char kDefaultColumnMap[] = "Weight:1,Height:2";

// Rows whose mapped cells do not all parse as finite numbers pass through
// untouched and are counted; nothing is ever imputed.
enum class MissingPolicy { kSkipAndCount };

// A CSV table with some columns designated as policy coordinates. Cells keep
// their original text so unmapped columns round-trip byte for byte.
class DataTable {
 public:
  static absl::StatusOr<DataTable> Create(CsvRow header,
                                          std::vector<CsvRow> rows,
                                          std::vector<ColumnMapping> mapping);

  const CsvRow& header() const { return header_; }
  const std::vector<CsvRow>& rows() const { return rows_; }
  const std::vector<ColumnMapping>& mapping() const { return mapping_; }
  std::size_t size() const { return rows_.size(); }
  int dim() const { return static_cast<int>(mapping_.size()); }

  // Column index holding coordinate `k` (0-based).
  std::size_t column_of(int k) const { return columns_[k]; }

  // Numeric value of coordinate `k` (0-based) in `row`, if it parses.
  std::optional<double> Coordinate(std::size_t row, int k) const {
    return coords_[row][k];
  }

  // All coordinates of `row`, or nullopt if any is missing.
  std::optional<std::vector<double>> Point(std::size_t row) const;

  // Rows with at least one missing mapped cell.
  std::size_t rows_missing() const;

  // Overwrites coordinate `k` (0-based) of `row` with `value`, printed in
  // shortest round-trip form.
  void SetCoordinate(std::size_t row, int k, double value);

  friend bool operator==(const DataTable& a, const DataTable& b) {
    return a.header_ == b.header_ && a.rows_ == b.rows_;
  }

 private:
  DataTable() = default;

  CsvRow header_;
  std::vector<CsvRow> rows_;
  std::vector<ColumnMapping> mapping_;
  std::vector<std::size_t> columns_;
  std::vector<std::vector<std::optional<double>>> coords_;

};

// Strict numeric cell parse: optional surrounding whitespace, then a finite
// decimal number and nothing else.
std::optional<double> ParseNumericCell(std::string_view cell);

absl::StatusOr<DataTable> ParseTable(std::string_view csv_text,
                                     std::vector<ColumnMapping> mapping,
                                     MissingPolicy missing = MissingPolicy::kSkipAndCount);

// Fails if the file is absent, a mapped column is absent, or no row has all
// mapped cells present.
absl::StatusOr<DataTable> LoadCsv(const std::string& path,
                                  std::vector<ColumnMapping> mapping,
                                  MissingPolicy missing = MissingPolicy::kSkipAndCount);

std::string TableToCsv(const DataTable& t);
absl::Status WriteCsv(const DataTable& t, const std::string& path);

// Synthetic survey-like table: columns id, Age, Gender, Height (cm), Weight
// (kg) mapped by kDefaultColumnMap. Heights and weights fall inside
// [0,250] and [0,200]; about 2% of rows miss one of them. Deterministic in
// `seed` on every platform.
DataTable GenerateFixture(std::uint64_t seed, std::size_t n);

struct SanitizationReport {
  std::size_t rows_total = 0;
  std::size_t rows_modified = 0;
  std::size_t rows_unmodified = 0;
  std::size_t rows_skipped_missing = 0;
  // Complete rows outside the certified box (sanitized regardless).
  std::size_t rows_outside_box = 0;
  double max_perturbation = 0.0;
  double epsilon = 0.0;
  double rho = 0.0;

  nlohmann::json ToJson() const;
};

// Applies the policy to every complete row; other rows pass through. A row
// counts as modified when it falls in the strip, and its protected cell is
// rewritten with the boundary value in round-trip precision.
absl::StatusOr<std::pair<DataTable, SanitizationReport>> SanitizeTable(
    const DataTable& t, const StripPolicy& p,
    const QuadratureParams& quad = {});

}  // namespace rangepriv

#endif  // RANGEPRIV_DATAIO_H_
