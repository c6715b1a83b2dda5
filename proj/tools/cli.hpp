// Copyright 2026 The ballslab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Parsing and execution are split so tests can
// drive run() directly with an in-memory config and output stream.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ballslab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailure = 1;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitUnconverged = 3;

/// Version of the CSV/JSON layouts; bump on any column or field change.
inline constexpr int kSchemaVersion = 1;

enum class Format { Csv, Json };

struct ExperimentConfig {
  std::string command;
  std::optional<int> n;
  std::optional<double> N;
  std::optional<double> log_N;
  double gamma = 0.69314718055994530942;
  /// Slab half-width; the analytic width is used when unset.
  std::optional<double> t;
  std::uint64_t seed = 1;
  std::uint64_t samples = 20000;
  std::uint64_t realizations = 200;
  Format format = Format::Csv;
  /// Output path; empty means standard output.
  std::string out;
  /// "asymptotic" (N >= n^n) or "ten-pow-n" (N >= 10^n).
  std::string constants = "asymptotic";
  /// Sweep schedule: "power", "self-power" or "root-exponent".
  std::string schedule = "self-power";
  double base = 10.0;
  std::vector<int> dims;
  unsigned threads = 0;
  /// Quadrature controls; see ExpectationOptions.
  double tolerance = 1e-10;
  double rel_tolerance = 1e-12;
  std::size_t max_panels = 200000;
};

/// Raised for unusable configurations; maps to kExitBadConfig.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses flags and an optional key=value file given by --config; flags
/// override the file. Throws ConfigError. Returns nullopt after --help.
std::optional<ExperimentConfig> parse_args(int argc, const char* const* argv, std::ostream& log);

/// Executes one command, writing the results table to `out`. Diagnostics
/// go to `log`. Returns one of the kExit* codes.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

/// parse_args + run, honoring config.out.
int main(int argc, const char* const* argv);

}  // namespace ballslab::cli
