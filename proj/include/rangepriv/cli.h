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

#ifndef RANGEPRIV_CLI_H_
#define RANGEPRIV_CLI_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace rangepriv {

// Everything a subcommand may read, validated before any work starts.
struct RunConfig {
  std::string subcommand;
  std::string config_path;
  std::string input_path;
  std::string output_path;
  std::string report_path;
  std::string columns = "Weight:1,Height:2";
  std::vector<double> rhos;
  std::size_t bins = 50;
  double alpha = 1e-9;
  std::uint64_t seed = 7;
  std::size_t rows = 1010;
  std::string kl_direction = "original-to-sanitized";
};

// "0.1,1,10" -> {0.1, 1, 10}; every value must be positive and finite.
absl::StatusOr<std::vector<double>> ParseRhoList(std::string_view spec);

// "lo:hi:steps[:log|:lin]"; log spacing by default.
absl::StatusOr<std::vector<double>> ParseRhoRange(std::string_view spec);

int CmdSanitize(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int CmdSweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int CmdTest(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int CmdMetrics(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int CmdFixture(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches. Returns the
// process exit status: 0 iff every requested output was written.
int RunCli(const std::vector<std::string>& argv, std::ostream& out,
           std::ostream& err);

}  // namespace rangepriv

#endif  // RANGEPRIV_CLI_H_
