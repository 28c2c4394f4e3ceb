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

// Command-line front end: one subcommand per scenario.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catwalk/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct Flag {
  const char* name;
  const char* key;
  const char* help;
};

const Flag kFlags[] = {
    {"--theta", "theta", "coin angle in radians; 'pi/4' style accepted; comma list for sweeps"},
    {"--sigma", "sigma", "Gaussian width in sites"},
    {"--delta", "delta", "momentum width for --start momentum"},
    {"--steps", "steps", "number of steps (T for revival/decoherence, t for control)"},
    {"--eta", "eta", "bath strength per step; comma list for decoherence"},
    {"--channel", "channel", "none|dephasing|amplitude_damping|bit_flip"},
    {"--target", "target", "dephasing target: coin|walker|both"},
    {"--p", "p", "F_m period(s), phi = 2pi/p"},
    {"--n", "n", "F_m hold repetitions"},
    {"--k0", "k0", "mean momentum; comma list for returnk0"},
    {"--out", "out", "output directory"},
    {"--format", "format", "csv|plot|both"},
    {"--lattice", "lattice", "lattice size N or 'auto'"},
    {"--start", "start", "gaussian|localized|momentum"},
    {"--coin", "coin", "circular|symmetric|up|down|plus"},
    {"--varphi", "varphi", "relative phase of the symmetric coin"},
    {"--snapshots", "snapshots", "comma list of steps to record"},
    {"--stride", "stride", "record every stride steps (evolve)"},
    {"--width-sigmas", "width_sigmas", "initial widths for the saturation sweep (catstates)"},
    {"--width-steps", "width_steps", "steps for the saturation sweep (catstates)"},
    {"--budget-mb", "budget_mb", "memory budget for density-matrix runs"},
    {"--threads", "threads", "worker threads for sweeps (0 = auto)"},
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw catwalk::ConfigError("--config", "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum-walk cat-state experiments. Output root defaults to $CATWALK_OUTPUT_DIR."};
  app.require_subcommand(0, 1);
  bool list = false;
  app.add_flag("--list", list, "list scenarios and config keys");
  app.set_version_flag("--version", CATWALK_VERSION);

  struct Values {
    std::string config_file;
    std::vector<std::string> sets;
    std::vector<std::optional<std::string>> flags{std::size(kFlags)};
    bool timestamp = false;
    bool quiet = false;
  };
  std::vector<std::pair<CLI::App*, Values>> subs;
  subs.reserve(catwalk::scenarios().size());
  for (const auto& sc : catwalk::scenarios()) {
    auto* sub = app.add_subcommand(sc.name, sc.summary);
    subs.emplace_back(sub, Values{});
    auto& v = subs.back().second;
    sub->add_option("--config", v.config_file, "key=value config file");
    for (std::size_t i = 0; i < std::size(kFlags); ++i) sub->add_option(kFlags[i].name, v.flags[i], kFlags[i].help);
    sub->add_option("--set", v.sets, "extra key=value override (repeatable)");
    sub->add_flag("--timestamp", v.timestamp, "record the wall-clock time in metadata");
    sub->add_flag("-q,--quiet", v.quiet, "do not list written files");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (list || app.get_subcommands().empty()) {
    std::cout << "scenarios:\n";
    for (const auto& sc : catwalk::scenarios()) {
      std::cout << "  " << sc.name << (sc.density ? " [density]" : "") << "  " << sc.summary << "\n";
    }
    std::cout << "config keys:\n ";
    for (const auto& k : catwalk::config_keys()) std::cout << " " << k;
    std::cout << "\n";
    return 0;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const Values* values = nullptr;
  for (const auto& [sub, v] : subs) {
    if (sub == chosen) values = &v;
  }

  try {
    catwalk::ExperimentConfig config;
    if (!values->config_file.empty()) catwalk::parse_config_into(config, read_file(values->config_file));
    catwalk::apply_setting(config, "scenario", chosen->get_name(), catwalk::Provenance::flag, "subcommand");
    for (std::size_t i = 0; i < std::size(kFlags); ++i) {
      if (values->flags[i]) {
        catwalk::apply_setting(config, kFlags[i].key, *values->flags[i], catwalk::Provenance::flag, kFlags[i].name);
      }
    }
    for (const auto& s : values->sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw catwalk::ConfigError("--set", "expected key=value, got '" + s + "'");
      catwalk::apply_setting(config, s.substr(0, eq), s.substr(eq + 1), catwalk::Provenance::flag, "--set " + s);
    }
    if (values->timestamp) catwalk::apply_setting(config, "timestamp", "true", catwalk::Provenance::flag, "--timestamp");

    const catwalk::ExperimentConfig resolved = catwalk::resolve(config);
    const auto record = catwalk::run_scenario(resolved);
    const auto dir = catwalk::output_directory(resolved);
    const auto files = catwalk::emit_results(record, dir, resolved.format);
    if (!values->quiet) {
      for (const auto& f : files) std::cout << f.string() << "\n";
    }
    return 0;
  } catch (const catwalk::ConfigError& e) {
    std::cerr << "catwalk: config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const catwalk::ResourceError& e) {
    std::cerr << "catwalk: refusing to run: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "catwalk: " << e.what() << "\n";
    return 1;
  }
}
