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

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "catwalk/experiments.hpp"

namespace catwalk {
namespace {

std::string format_cell(double v, bool integer) {
  if (integer) return std::to_string(static_cast<long long>(std::llround(v)));
  return format_real(v);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
  f << content;
  f.close();
  if (!f) throw std::runtime_error("failed writing " + path.string());
}

std::string csv_text(const Table& t) {
  std::string s;
  for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c];
  s += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) s += ',';
      s += format_cell(row[c], t.integer[c]);
    }
    s += '\n';
  }
  return s;
}

std::string plot_text(const Table& t) {
  std::string s = "# " + t.columns[t.plot_x] + " " + t.columns[t.plot_y] + "\n";
  bool first = true;
  double group = 0.0;
  for (const auto& row : t.rows) {
    if (t.plot_group >= 0 && (first || row[t.plot_group] != group)) {
      if (!first) s += "\n\n";
      group = row[t.plot_group];
      s += "# " + t.columns[t.plot_group] + "=" + format_cell(group, t.integer[t.plot_group]) + "\n";
    }
    first = false;
    s += format_cell(row[t.plot_x], t.integer[t.plot_x]) + " " + format_cell(row[t.plot_y], t.integer[t.plot_y]) + "\n";
  }
  return s;
}

}  // namespace

ResourceError::ResourceError(std::uint64_t predicted, std::uint64_t budget)
    : std::runtime_error("predicted memory " + std::to_string(predicted) + " bytes exceeds the budget of " +
                         std::to_string(budget) + " bytes"),
      predicted_(predicted),
      budget_(budget) {}

Table::Table(std::string name_, std::vector<std::string> columns_, std::vector<bool> integer_)
    : name(std::move(name_)), columns(std::move(columns_)), integer(std::move(integer_)) {
  integer.resize(columns.size(), false);
  if (columns.size() < 2) plot_y = 0;
}

void Table::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("table " + name + " expects " + std::to_string(columns.size()) + " columns, got " +
                                std::to_string(row.size()));
  }
  rows.push_back(std::move(row));
}

const Table& ResultRecord::table(const std::string& name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no table named " + name);
}

std::vector<std::filesystem::path> emit_results(const ResultRecord& record, const std::filesystem::path& dir,
                                                OutputFormat format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  std::vector<std::filesystem::path> written;
  for (const auto& t : record.tables) {
    if (format != OutputFormat::plot) {
      written.push_back(dir / (t.name + ".csv"));
      write_file(written.back(), csv_text(t));
    }
    if (format != OutputFormat::csv) {
      written.push_back(dir / (t.name + ".dat"));
      write_file(written.back(), plot_text(t));
    }
  }
  std::string meta = "scenario=" + record.scenario + "\n";
  for (const auto& [k, v] : record.metadata) meta += k + "=" + v + "\n";
  written.push_back(dir / "metadata.txt");
  write_file(written.back(), meta);
  return written;
}

std::filesystem::path output_directory(const ExperimentConfig& config) {
  if (!config.out.empty()) return config.out;
  if (const char* root = std::getenv("CATWALK_OUTPUT_DIR"); root && *root) {
    return std::filesystem::path(root) / config.scenario;
  }
  return std::filesystem::path("catwalk-out") / config.scenario;
}

}  // namespace catwalk
