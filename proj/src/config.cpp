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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "catwalk/experiments.hpp"

namespace catwalk {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto comma = s.find(',', pos);
    parts.push_back(trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return parts;
}

bool plain_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

// Accepts plain numbers and multiples of pi such as "pi/4", "-2*pi/3", "3pi".
double parse_real(std::string_view s, const std::string& key, const std::string& where) {
  s = trim(s);
  double v = 0.0;
  if (plain_number(s, v) && std::isfinite(v)) return v;
  const auto at = s.find("pi");
  if (at != std::string_view::npos) {
    std::string_view coef = trim(s.substr(0, at));
    std::string_view tail = trim(s.substr(at + 2));
    double a = 1.0;
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    bool ok = true;
    if (coef == "-") {
      a = -1.0;
    } else if (!coef.empty()) {
      ok = plain_number(coef, a);
    }
    double b = 1.0;
    if (ok && !tail.empty()) ok = tail.front() == '/' && plain_number(trim(tail.substr(1)), b) && b != 0.0;
    if (ok) return a * kPi / b;
  }
  throw ConfigError(where, key + " expects a real number, got '" + std::string(s) + "'");
}

int parse_int(std::string_view s, const std::string& key, const std::string& where) {
  s = trim(s);
  int v = 0;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || ptr != end) {
    throw ConfigError(where, key + " expects an integer, got '" + std::string(s) + "'");
  }
  return v;
}

bool parse_bool(std::string_view s, const std::string& key, const std::string& where) {
  s = trim(s);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError(where, key + " expects true or false, got '" + std::string(s) + "'");
}

std::string parse_choice(std::string_view s, const std::string& key, const std::string& where,
                         std::initializer_list<std::string_view> choices) {
  s = trim(s);
  for (auto c : choices) {
    if (s == c) return std::string(s);
  }
  std::string allowed;
  for (auto c : choices) allowed += (allowed.empty() ? "" : "|") + std::string(c);
  throw ConfigError(where, key + " must be one of " + allowed + ", got '" + std::string(s) + "'");
}

void require(bool ok, const std::string& where, const std::string& message) {
  if (!ok) throw ConfigError(where, message);
}

std::vector<double> parse_reals(std::string_view s, const std::string& key, const std::string& where) {
  std::vector<double> out;
  for (auto part : split_list(s)) out.push_back(parse_real(part, key, where));
  return out;
}

std::vector<int> parse_ints(std::string_view s, const std::string& key, const std::string& where) {
  std::vector<int> out;
  for (auto part : split_list(s)) out.push_back(parse_int(part, key, where));
  return out;
}

template <class T>
std::string join(const std::vector<T>& values) {
  std::string s;
  for (const auto& v : values) {
    if (!s.empty()) s += ',';
    if constexpr (std::is_same_v<T, double>) {
      s += format_real(v);
    } else {
      s += std::to_string(v);
    }
  }
  return s;
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return "csv";
    case OutputFormat::plot: return "plot";
    case OutputFormat::both: return "both";
  }
  return "both";
}

struct KeySpec {
  std::string name;
  std::function<void(ExperimentConfig&, std::string_view, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"scenario",
       [](ExperimentConfig& c, std::string_view v, const std::string&) { c.scenario = std::string(trim(v)); },
       [](const ExperimentConfig& c) { return c.scenario; }},
      {"theta",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto t = parse_reals(v, "theta", w);
         for (double x : t) require(x >= 0.0 && x < 2.0 * kPi, w, "theta must lie in [0, 2pi)");
         c.theta = t;
       },
       [](const ExperimentConfig& c) { return join(c.theta); }},
      {"sigma",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.sigma = parse_real(v, "sigma", w);
         require(c.sigma > 0.0, w, "sigma must be > 0");
       },
       [](const ExperimentConfig& c) { return format_real(c.sigma); }},
      {"delta",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.delta = parse_real(v, "delta", w);
         require(c.delta > 0.0, w, "delta must be > 0");
       },
       [](const ExperimentConfig& c) { return format_real(c.delta); }},
      {"k0",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto k = parse_reals(v, "k0", w);
         for (double x : k) require(std::abs(x) <= kPi, w, "k0 must lie in [-pi, pi]");
         c.k0 = k;
       },
       [](const ExperimentConfig& c) { return join(c.k0); }},
      {"start",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.start = parse_choice(v, "start", w, {"gaussian", "localized", "momentum"});
       },
       [](const ExperimentConfig& c) { return c.start; }},
      {"coin",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.coin = parse_choice(v, "coin", w, {"circular", "symmetric", "up", "down", "plus"});
       },
       [](const ExperimentConfig& c) { return c.coin; }},
      {"varphi", [](ExperimentConfig& c, std::string_view v, const std::string& w) { c.varphi = parse_real(v, "varphi", w); },
       [](const ExperimentConfig& c) { return format_real(c.varphi); }},
      {"steps",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.steps = parse_int(v, "steps", w);
         require(c.steps >= 0 && c.steps <= 1000000, w, "steps must lie in [0, 1000000]");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.steps); }},
      {"snapshots",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto s = parse_ints(v, "snapshots", w);
         for (int x : s) require(x >= 0, w, "snapshots must be >= 0");
         c.snapshots = s;
       },
       [](const ExperimentConfig& c) { return join(c.snapshots); }},
      {"stride",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.stride = parse_int(v, "stride", w);
         require(c.stride >= 0, w, "stride must be >= 0");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.stride); }},
      {"eta",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto e = parse_reals(v, "eta", w);
         for (double x : e) require(x >= 0.0, w, "eta must be >= 0");
         c.eta = e;
       },
       [](const ExperimentConfig& c) { return join(c.eta); }},
      {"channel",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.channel = parse_choice(v, "channel", w, {"none", "dephasing", "amplitude_damping", "bit_flip"});
       },
       [](const ExperimentConfig& c) { return c.channel; }},
      {"target",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.target = parse_choice(v, "target", w, {"coin", "walker", "both"});
       },
       [](const ExperimentConfig& c) { return c.target; }},
      {"p",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto p = parse_ints(v, "p", w);
         for (int x : p) require(x >= 1, w, "p must be >= 1");
         c.p = p;
       },
       [](const ExperimentConfig& c) { return join(c.p); }},
      {"n",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto n = parse_ints(v, "n", w);
         for (int x : n) require(x >= 0, w, "n must be >= 0");
         c.n = n;
       },
       [](const ExperimentConfig& c) { return join(c.n); }},
      {"width_sigmas",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         auto s = parse_reals(v, "width_sigmas", w);
         for (double x : s) require(x > 0.0, w, "width_sigmas must be > 0");
         c.width_sigmas = s;
       },
       [](const ExperimentConfig& c) { return join(c.width_sigmas); }},
      {"width_steps",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.width_steps = parse_int(v, "width_steps", w);
         require(c.width_steps >= 0, w, "width_steps must be >= 0");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.width_steps); }},
      {"lattice",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         if (trim(v) == "auto") {
           c.lattice = 0;
           return;
         }
         c.lattice = parse_int(v, "lattice", w);
         require(c.lattice == 0 || (c.lattice >= 4 && c.lattice % 2 == 0), w,
                 "lattice must be auto, 0, or an even integer >= 4");
       },
       [](const ExperimentConfig& c) { return c.lattice == 0 ? std::string("auto") : std::to_string(c.lattice); }},
      {"out", [](ExperimentConfig& c, std::string_view v, const std::string&) { c.out = std::string(trim(v)); },
       [](const ExperimentConfig& c) { return c.out; }},
      {"format",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         const auto f = parse_choice(v, "format", w, {"csv", "plot", "both"});
         c.format = f == "csv" ? OutputFormat::csv : f == "plot" ? OutputFormat::plot : OutputFormat::both;
       },
       [](const ExperimentConfig& c) { return std::string(to_string(c.format)); }},
      {"budget_mb",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.budget_mb = parse_real(v, "budget_mb", w);
         require(c.budget_mb > 0.0, w, "budget_mb must be > 0");
       },
       [](const ExperimentConfig& c) { return format_real(c.budget_mb); }},
      {"threads",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) {
         c.threads = parse_int(v, "threads", w);
         require(c.threads >= 0, w, "threads must be >= 0");
       },
       [](const ExperimentConfig& c) { return std::to_string(c.threads); }},
      {"timestamp",
       [](ExperimentConfig& c, std::string_view v, const std::string& w) { c.timestamp = parse_bool(v, "timestamp", w); },
       [](const ExperimentConfig& c) { return std::string(c.timestamp ? "true" : "false"); }},
  };
  return specs;
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::default_value: return "default";
    case Provenance::file: return "file";
    case Provenance::flag: return "flag";
  }
  return "default";
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Provenance ExperimentConfig::source(const std::string& key) const {
  const auto it = provenance.find(key);
  return it == provenance.end() ? Provenance::default_value : it->second;
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& s : key_specs()) k.push_back(s.name);
    return k;
  }();
  return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value, Provenance origin,
                   const std::string& where) {
  const auto& specs = key_specs();
  const auto it = std::find_if(specs.begin(), specs.end(), [&](const KeySpec& s) { return s.name == key; });
  if (it == specs.end()) throw ConfigError(where, "unknown key '" + std::string(key) + "'");
  it->set(config, value, where);
  config.provenance[it->name] = origin;
}

void parse_config_into(ExperimentConfig& config, std::string_view text) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where, "expected key=value, got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(where, "missing key before '='");
    apply_setting(config, key, line.substr(eq + 1), Provenance::file, where);
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  parse_config_into(config, text);
  return config;
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& s : key_specs()) {
    if (s.name == "scenario") continue;
    out.emplace_back(s.name, s.get(config));
    out.emplace_back(s.name + ".source", std::string(to_string(config.source(s.name))));
  }
  return out;
}

}  // namespace catwalk
