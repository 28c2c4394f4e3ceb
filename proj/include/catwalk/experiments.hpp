// Copyright 2026 The catwalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "catwalk/lattice.hpp"

namespace catwalk {

/// Where a configuration value came from.
enum class Provenance { default_value, file, flag };
std::string_view to_string(Provenance p);

/// Bad key, malformed value or out-of-range parameter. `where` names the
/// config line ("line 3") or flag ("--eta").
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& message)
      : std::runtime_error(where.empty() ? message : where + ": " + message), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// A scenario would need more memory than the configured budget.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(std::uint64_t predicted, std::uint64_t budget);
  std::uint64_t predicted_bytes() const { return predicted_; }
  std::uint64_t budget_bytes() const { return budget_; }

 private:
  std::uint64_t predicted_;
  std::uint64_t budget_;
};

enum class OutputFormat { csv, plot, both };

/// Parameters for one scenario run. List-valued entries are swept by the
/// scenarios that sweep them and must hold a single value elsewhere.
struct ExperimentConfig {
  std::string scenario;
  std::vector<double> theta{kPi / 4.0};
  double sigma = 10.0;
  /// Momentum width for start=momentum.
  double delta = 0.05;
  std::vector<double> k0{0.0};
  /// gaussian | localized | momentum
  std::string start = "gaussian";
  /// circular (|up> + i|down>)/sqrt(2) | symmetric (uses varphi) | up | down
  /// | plus
  std::string coin = "circular";
  /// Relative phase of the symmetric coin state.
  double varphi = kPi / 2.0;
  /// Steps, T or t depending on the scenario.
  int steps = 150;
  std::vector<int> snapshots;
  /// Distribution tables every `stride` steps (evolve); 0 keeps only the end.
  int stride = 0;
  std::vector<double> eta{0.0};
  /// none | dephasing | amplitude_damping | bit_flip
  std::string channel = "none";
  /// coin | walker | both
  std::string target = "both";
  std::vector<int> p{10, 25, 50};
  std::vector<int> n{5};
  std::vector<double> width_sigmas{3.0, 7.0, 11.0, 15.0};
  int width_steps = 400;
  /// 0 selects the recommended size.
  int lattice = 0;
  std::string out;
  OutputFormat format = OutputFormat::both;
  double budget_mb = 4096.0;
  /// 0 picks min(hardware threads, 4).
  int threads = 0;
  bool timestamp = false;

  std::map<std::string, Provenance> provenance;

  Provenance source(const std::string& key) const;
};

/// Names of every accepted key, in documentation order.
const std::vector<std::string>& config_keys();

/// Sets one key from text. Throws ConfigError naming `where`.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value, Provenance origin,
                   const std::string& where);

/// Flat key=value text, one entry per line, '#' starts a comment.
ExperimentConfig parse_config(std::string_view text);
void parse_config_into(ExperimentConfig& config, std::string_view text);

/// Resolved key=value pairs for every parameter, each followed by its
/// `<key>.source` entry.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config);

/// %.17g
std::string format_real(double v);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  /// Columns flagged here are written as integers.
  std::vector<bool> integer;
  std::vector<std::vector<double>> rows;
  /// Plot emission: x and y column indices, optional grouping column that
  /// splits the data into blank-line separated blocks.
  int plot_x = 0;
  int plot_y = 1;
  int plot_group = -1;

  Table(std::string name, std::vector<std::string> columns, std::vector<bool> integer = {});
  void add_row(std::vector<double> row);
};

struct ResultRecord {
  std::string scenario;
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<Table> tables;

  const Table& table(const std::string& name) const;
};

/// Writes <table>.csv (csv/both), <table>.dat (plot/both) and metadata.txt
/// into `dir`, creating it. Returns the written paths.
std::vector<std::filesystem::path> emit_results(const ResultRecord& record, const std::filesystem::path& dir,
                                                OutputFormat format);

struct ScenarioInfo {
  std::string name;
  std::string summary;
  bool density = false;
};
const std::vector<ScenarioInfo>& scenarios();

/// Bytes held by one density-matrix run on an N-site lattice.
std::uint64_t density_run_bytes(int lattice_size);
/// Peak memory estimate for the scenario as configured (after defaults and
/// lattice sizing). Zero for pure-state scenarios beyond their O(N) vectors.
std::uint64_t predicted_bytes(const ExperimentConfig& config);

/// Fills scenario defaults for keys still at their default provenance and
/// validates the result. Throws ConfigError.
ExperimentConfig resolve(ExperimentConfig config);

/// The lattice size the scenario will use.
int resolved_lattice_size(const ExperimentConfig& config);

/// Runs a resolved config. Throws ConfigError or ResourceError.
ResultRecord run_scenario(const ExperimentConfig& config);

/// Output directory: `out` if set, else $CATWALK_OUTPUT_DIR/<scenario>, else
/// catwalk-out/<scenario>.
std::filesystem::path output_directory(const ExperimentConfig& config);

}  // namespace catwalk
