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
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <exception>
#include <functional>
#include <limits>
#include <optional>
#include <thread>

#include "catwalk/analysis.hpp"
#include "catwalk/experiments.hpp"
#include "catwalk/noise.hpp"
#include "catwalk/protocols.hpp"
#include "catwalk/spectral.hpp"
#include "catwalk/walk.hpp"

#ifndef CATWALK_VERSION
#define CATWALK_VERSION "unknown"
#endif

namespace catwalk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::vector<ScenarioInfo> kScenarios = {
    {"qwalk", "distributions from a localized and a delocalized start", false},
    {"dirac", "exact walk against Dirac-Hamiltonian evolution", false},
    {"catstates", "entropy growth, Schmidt components and width saturation", false},
    {"catfourier", "coin projection and momentum fringes", false},
    {"returnk0", "cat quality against the mean momentum k0", false},
    {"decohere", "distributions after open evolution under each channel", true},
    {"revival", "sigma_y reversal fidelity trace", true},
    {"decoherence", "revival fidelity against eta for every channel", true},
    {"control", "F_m hold protocol fidelity against p and n", false},
    {"evolve", "generic scheduled evolution", true},
    {"spectrum", "quasi-energies and eigenvector overlaps on the momentum grid", false},
};

bool is_default(const ExperimentConfig& c, const std::string& key) {
  return c.source(key) == Provenance::default_value;
}

template <class T>
const T& single(const std::vector<T>& v, const std::string& key, const std::string& scenario) {
  if (v.size() != 1) throw ConfigError(key, key + " takes a single value for scenario " + scenario);
  return v.front();
}

int worker_count(const ExperimentConfig& c, int jobs) {
  int t = c.threads;
  if (t <= 0) t = std::clamp(static_cast<int>(std::thread::hardware_concurrency()), 1, 4);
  return std::clamp(t, 1, std::max(1, jobs));
}

// Runs fn(0 .. count-1) on up to `threads` workers. Results must be written
// to per-index slots so the outcome does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::clamp(threads, 1, std::max(1, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < count; i = next++) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double effective_sigma(const ExperimentConfig& c) {
  if (c.start == "localized") return 0.5;
  if (c.start == "momentum") return 1.0 / (2.0 * c.delta);
  return c.sigma;
}

int max_of(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

// Steps the packet can travel and the width the lattice must hold.
std::pair<int, double> lattice_demand(const ExperimentConfig& c) {
  const double s = effective_sigma(c);
  if (c.scenario == "catstates") {
    double widest = s;
    for (double w : c.width_sigmas) widest = std::max(widest, w);
    return {std::max(c.steps, c.width_steps), widest};
  }
  if (c.scenario == "control") return {c.steps + 2 * max_of(c.p) * max_of(c.n), s};
  // Fringes from packets at +-n_t oscillate at 2 n_t per 2 pi, so the grid
  // needs N > 4 n_t to resolve them.
  if (c.scenario == "catfourier") return {2 * c.steps, s};
  if (c.scenario == "qwalk" || c.scenario == "dirac") return {std::max(c.steps, max_of(c.snapshots)), s};
  return {c.steps, s};
}

bool uses_channel(const ExperimentConfig& c) {
  if (c.scenario == "decohere" || c.scenario == "decoherence") return true;
  return (c.scenario == "revival" || c.scenario == "evolve") && c.channel != "none";
}

int density_jobs(const ExperimentConfig& c) {
  if (c.scenario == "decohere") return 3;
  if (c.scenario == "decoherence") return 5 * static_cast<int>(c.eta.size());
  if (c.scenario == "revival") return static_cast<int>(c.theta.size());
  return 1;
}

CoinState make_coin(const ExperimentConfig& c, double theta) {
  if (c.coin == "up") return CoinState::spin_up();
  if (c.coin == "down") return CoinState::spin_down();
  if (c.coin == "plus") return CoinState::normalized(1.0, 1.0);
  if (c.coin == "circular") return CoinState::normalized(1.0, Complex(0.0, 1.0));
  return symmetric_coin_state(theta, c.varphi);
}

PureState make_initial(const ExperimentConfig& c, const Lattice& lat, double theta, double k0, double sigma) {
  const CoinState coin = make_coin(c, theta);
  if (c.start == "localized") return localized_state(lat, 0, coin);
  if (c.start == "momentum") return to_position(gaussian_momentum_state(lat, c.delta, k0, coin));
  return gaussian_position_state(lat, sigma, 0, k0, coin);
}

PureState make_initial(const ExperimentConfig& c, const Lattice& lat, double theta, double k0) {
  return make_initial(c, lat, theta, k0, c.sigma);
}

Table distribution_table(const std::string& name, bool with_step) {
  Table t = with_step ? Table(name, {"step", "x", "probability"}, {true, true, false})
                      : Table(name, {"x", "probability"}, {true, false});
  if (with_step) {
    t.plot_x = 1;
    t.plot_y = 2;
    t.plot_group = 0;
  }
  return t;
}

void add_distribution(Table& t, const Lattice& lat, const std::vector<double>& p, std::optional<double> lead) {
  for (int i = 0; i < lat.size(); ++i) {
    if (lead) {
      t.add_row({*lead, static_cast<double>(lat.site_at(i)), p[i]});
    } else {
      t.add_row({static_cast<double>(lat.site_at(i)), p[i]});
    }
  }
}

Schedule plain_schedule(double theta, int steps) {
  Schedule s;
  s.theta = theta;
  s.total_steps = steps;
  return s;
}

ChannelSpec channel_from(const ExperimentConfig& c, double eta) {
  ChannelSpec spec;
  spec.kind = *parse_channel_kind(c.channel);
  spec.eta = eta;
  spec.target = spec.kind == ChannelKind::dephasing ? *parse_channel_target(c.target) : ChannelTarget::coin;
  return spec;
}

// ---- scenarios -------------------------------------------------------------

void run_qwalk(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const double k0 = single(c.k0, "k0", c.scenario);
  Table metrics("metrics", {"start", "step", "left_peak", "right_peak", "separation", "residual", "mass_balance", "entropy"},
                {true, true, true, true, true, false, false, false});
  metrics.plot_x = 1;
  metrics.plot_y = 5;
  metrics.plot_group = 0;

  const std::vector<std::pair<std::string, PureState>> starts = {
      {"localized", localized_state(lat, 0, make_coin(c, theta))},
      {"delocalized", make_initial(c, lat, theta, k0)},
  };
  for (std::size_t s = 0; s < starts.size(); ++s) {
    Table dist = distribution_table("distribution_" + starts[s].first, true);
    const auto traj = evolve_with_snapshots(starts[s].second, plain_schedule(theta, c.steps), c.snapshots);
    for (const auto& [t, psi] : traj.snapshots) {
      const auto p = position_distribution(psi);
      add_distribution(dist, lat, p, t);
      const CatMetrics m = cat_metrics(p, lat);
      metrics.add_row({static_cast<double>(s), static_cast<double>(t), static_cast<double>(m.left_peak),
                       static_cast<double>(m.right_peak), static_cast<double>(m.separation), m.residual,
                       m.mass_balance, entanglement_entropy(psi)});
    }
    rec.tables.push_back(std::move(dist));
  }
  rec.tables.push_back(std::move(metrics));
  rec.metadata.emplace_back("start_index.0", "localized");
  rec.metadata.emplace_back("start_index.1", "delocalized");
}

void run_dirac(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  Table walk = distribution_table("distribution_walk", true);
  Table dirac = distribution_table("distribution_dirac", true);
  Table widths("widths", {"step", "walk_width_x", "walk_width_xperp", "dirac_width_x", "dirac_width_xperp", "ratio"},
               {true});
  widths.plot_y = 5;
  const auto traj = evolve_with_snapshots(psi0, plain_schedule(theta, c.steps), c.snapshots);
  for (const auto& [t, psi] : traj.snapshots) {
    const PureState d = dirac_evolve(psi0, theta, t);
    add_distribution(walk, lat, position_distribution(psi), t);
    add_distribution(dirac, lat, position_distribution(d), t);
    const auto ww = component_widths(psi);
    const auto dw = component_widths(d);
    widths.add_row({static_cast<double>(t), ww[0], ww[1], dw[0], dw[1], ww[0] > 0.0 ? dw[0] / ww[0] : kNaN});
  }
  rec.tables.push_back(std::move(walk));
  rec.tables.push_back(std::move(dirac));
  rec.tables.push_back(std::move(widths));
}

void run_catstates(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const double k0 = single(c.k0, "k0", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, k0);

  Table entropy("entropy", {"step", "entropy"}, {true});
  const PureState final_state =
      evolve(psi0, plain_schedule(theta, c.steps), [&](int t, const PureState& psi) {
        entropy.add_row({static_cast<double>(t), entanglement_entropy(psi)});
      });

  const SchmidtDecomposition sd = schmidt_components(final_state);
  const auto px = position_distribution(sd.walkers[0]);
  const auto pxp = position_distribution(sd.walkers[1]);
  Table comps("components", {"x", "probability_x", "probability_xperp"}, {true});
  for (int i = 0; i < lat.size(); ++i) comps.add_row({static_cast<double>(lat.site_at(i)), px[i], pxp[i]});
  const Moments mx = moments(px, lat);
  const Moments mxp = moments(pxp, lat);
  Table schmidt("schmidt", {"weight_x", "weight_xperp", "mean_x", "mean_xperp", "width_x", "width_xperp", "overlap",
                            "entropy", "degenerate"},
                {false, false, false, false, false, false, false, false, true});
  const auto cw = component_widths(final_state);
  schmidt.add_row({sd.weights[0], sd.weights[1], mx.mean, mxp.mean, cw[0], cw[1],
                   distribution_overlap(px, pxp), entanglement_entropy(final_state), sd.degenerate ? 1.0 : 0.0});

  const int jobs = static_cast<int>(c.width_sigmas.size());
  std::vector<std::array<double, 3>> ratios(jobs);
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    const PureState start = make_initial(c, lat, theta, k0, c.width_sigmas[j]);
    const double w0 = packet_width(position_distribution(start));
    const PureState end = evolve(start, plain_schedule(theta, c.width_steps));
    const double w1 = component_widths(end)[0];
    ratios[j] = {w0, w1, w1 / w0};
  });
  Table widths("widths", {"sigma0", "width_initial", "width_final", "ratio"});
  widths.plot_y = 3;
  for (int j = 0; j < jobs; ++j) widths.add_row({c.width_sigmas[j], ratios[j][0], ratios[j][1], ratios[j][2]});

  rec.tables.push_back(std::move(entropy));
  rec.tables.push_back(std::move(comps));
  rec.tables.push_back(std::move(schmidt));
  rec.tables.push_back(std::move(widths));
}

void run_catfourier(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  const PureState psi = evolve(psi0, plain_schedule(theta, c.steps));
  const CatMetrics cm = cat_metrics(position_distribution(psi), lat);
  const CoinProjection proj = project_coin(psi, make_coin(c, theta));
  const FringeAnalysis fr = momentum_fringes(proj.walker);

  Table mom("momentum", {"k", "probability"});
  for (std::size_t j = 0; j < fr.momenta.size(); ++j) mom.add_row({fr.momenta[j], fr.probability[j]});
  Table pos = distribution_table("projected_distribution", false);
  add_distribution(pos, lat, position_distribution(proj.walker), std::nullopt);
  Table summary("fringes", {"n_t", "spacing", "expected_spacing", "visibility", "success_probability"}, {true});
  summary.add_row({static_cast<double>(cm.right_peak), fr.spacing.value_or(kNaN),
                   cm.right_peak != 0 ? kPi / std::abs(cm.right_peak) : kNaN, fr.visibility, proj.success_probability});
  rec.tables.push_back(std::move(mom));
  rec.tables.push_back(std::move(pos));
  rec.tables.push_back(std::move(summary));
}

void run_returnk0(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const int jobs = static_cast<int>(c.k0.size());
  std::vector<std::vector<double>> dists(jobs);
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    dists[j] = position_distribution(evolve(make_initial(c, lat, theta, c.k0[j]), plain_schedule(theta, c.steps)));
  });
  Table dist("distribution", {"k0", "x", "probability"}, {false, true, false});
  dist.plot_x = 1;
  dist.plot_y = 2;
  dist.plot_group = 0;
  Table metrics("metrics", {"k0", "left_peak", "right_peak", "left_mass", "right_mass", "residual", "mass_balance"},
                {false, true, true});
  metrics.plot_y = 6;
  for (int j = 0; j < jobs; ++j) {
    add_distribution(dist, lat, dists[j], c.k0[j]);
    const CatMetrics m = cat_metrics(dists[j], lat);
    metrics.add_row({c.k0[j], static_cast<double>(m.left_peak), static_cast<double>(m.right_peak), m.left_mass,
                     m.right_mass, m.residual, m.mass_balance});
  }
  rec.tables.push_back(std::move(dist));
  rec.tables.push_back(std::move(metrics));
}

void run_decohere(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const double eta = single(c.eta, "eta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  const std::vector<ChannelSpec> specs = {
      {ChannelKind::dephasing, eta, *parse_channel_target(c.target)},
      {ChannelKind::amplitude_damping, eta, ChannelTarget::coin},
      {ChannelKind::bit_flip, eta, ChannelTarget::coin},
  };
  struct Outcome {
    std::vector<double> p;
    double trace = 0.0;
    double purity = 0.0;
  };
  std::vector<Outcome> out(specs.size());
  const int jobs = static_cast<int>(specs.size());
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    Schedule s = plain_schedule(theta, c.steps);
    s.channel = specs[j];
    const DensityOperator rho = evolve_open(DensityOperator::from_pure(psi0), s);
    out[j] = {position_distribution(rho), rho.trace(), rho.purity()};
  });
  Table metrics("metrics", {"channel", "left_peak", "right_peak", "left_mass", "right_mass", "residual",
                            "mass_balance", "trace", "purity"},
                {true, true, true});
  metrics.plot_y = 6;
  for (int j = 0; j < jobs; ++j) {
    const std::string name(to_string(specs[j].kind));
    Table dist = distribution_table("distribution_" + name, false);
    add_distribution(dist, lat, out[j].p, std::nullopt);
    rec.tables.push_back(std::move(dist));
    const CatMetrics m = cat_metrics(out[j].p, lat);
    metrics.add_row({static_cast<double>(j), static_cast<double>(m.left_peak), static_cast<double>(m.right_peak),
                     m.left_mass, m.right_mass, m.residual, m.mass_balance, out[j].trace, out[j].purity});
    rec.metadata.emplace_back("channel_index." + std::to_string(j), name);
  }
  rec.tables.push_back(std::move(metrics));
}

void run_revival(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double k0 = single(c.k0, "k0", c.scenario);
  std::optional<ChannelSpec> channel;
  if (c.channel != "none") channel = channel_from(c, single(c.eta, "eta", c.scenario));
  const int jobs = static_cast<int>(c.theta.size());
  std::vector<std::optional<RevivalResult>> results(jobs);
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    results[j] = revival_protocol(make_initial(c, lat, c.theta[j], k0), c.theta[j], c.steps, channel);
  });
  Table trace("fidelity", {"theta", "step", "fidelity"}, {false, true, false});
  trace.plot_x = 1;
  trace.plot_y = 2;
  trace.plot_group = 0;
  Table summary("summary", {"theta", "r", "peak_step"}, {false, false, true});
  for (int j = 0; j < jobs; ++j) {
    const auto& r = *results[j];
    for (std::size_t t = 0; t < r.fidelity_trace.size(); ++t) {
      trace.add_row({c.theta[j], static_cast<double>(t), r.fidelity_trace[t]});
    }
    summary.add_row({c.theta[j], r.r, static_cast<double>(r.peak_step)});
  }
  rec.tables.push_back(std::move(trace));
  rec.tables.push_back(std::move(summary));
}

void run_decoherence(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  const std::vector<std::pair<std::string, ChannelSpec>> kinds = {
      {"r_dephasing_coin", {ChannelKind::dephasing, 0.0, ChannelTarget::coin}},
      {"r_dephasing_walker", {ChannelKind::dephasing, 0.0, ChannelTarget::walker}},
      {"r_dephasing_both", {ChannelKind::dephasing, 0.0, ChannelTarget::both}},
      {"r_amplitude_damping", {ChannelKind::amplitude_damping, 0.0, ChannelTarget::coin}},
      {"r_bit_flip", {ChannelKind::bit_flip, 0.0, ChannelTarget::coin}},
  };
  const int nk = static_cast<int>(kinds.size());
  const int jobs = nk * static_cast<int>(c.eta.size());
  std::vector<double> r(jobs);
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    ChannelSpec spec = kinds[j % nk].second;
    spec.eta = c.eta[j / nk];
    r[j] = revival_protocol(psi0, theta, c.steps, spec).r;
  });
  std::vector<std::string> cols{"eta"};
  for (const auto& k : kinds) cols.push_back(k.first);
  Table table("revival", cols);
  for (std::size_t e = 0; e < c.eta.size(); ++e) {
    std::vector<double> row{c.eta[e]};
    for (int k = 0; k < nk; ++k) row.push_back(r[e * nk + k]);
    table.add_row(std::move(row));
  }
  const RevivalResult pure = revival_protocol(psi0, theta, c.steps);
  Table reference("noiseless", {"r", "peak_step"}, {false, true});
  reference.add_row({pure.r, static_cast<double>(pure.peak_step)});
  rec.tables.push_back(std::move(table));
  rec.tables.push_back(std::move(reference));
}

void run_control(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  std::vector<std::pair<int, int>> grid;
  for (int n : c.n) {
    for (int p : c.p) grid.emplace_back(p, n);
  }
  const int jobs = static_cast<int>(grid.size());
  std::vector<std::optional<ControlResult>> results(jobs);
  parallel_for(jobs, worker_count(c, jobs), [&](int j) {
    results[j] = control_protocol(psi0, theta, c.steps, grid[j].first, grid[j].second);
  });
  Table table("control", {"p", "n", "r", "hold_period", "hold_fidelity"}, {true, true, false, true, false});
  table.plot_y = 2;
  table.plot_group = 1;
  for (int j = 0; j < jobs; ++j) {
    const auto& res = *results[j];
    table.add_row({static_cast<double>(grid[j].first), static_cast<double>(grid[j].second), res.r,
                   static_cast<double>(res.hold_period), res.hold_fidelity.value_or(kNaN)});
  }
  rec.tables.push_back(std::move(table));
}

void run_evolve(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const PureState psi0 = make_initial(c, lat, theta, single(c.k0, "k0", c.scenario));
  Table dist = distribution_table("distribution", true);
  Table summary("summary", {"step", "mean", "width", "coin_entropy", "trace", "purity"}, {true});
  summary.plot_y = 2;
  auto wanted = [&](int t) { return t == c.steps || (c.stride > 0 && t % c.stride == 0); };
  auto record = [&](int t, const std::vector<double>& p, const Matrix2& coin, double trace, double purity) {
    add_distribution(dist, lat, p, t);
    const Moments m = moments(p, lat);
    summary.add_row({static_cast<double>(t), m.mean, m.width, entropy_bits(coin), trace, purity});
  };
  Schedule s = plain_schedule(theta, c.steps);
  if (c.channel == "none") {
    evolve(psi0, s, [&](int t, const PureState& psi) {
      if (wanted(t)) record(t, position_distribution(psi), reduced_coin(psi), psi.norm() * psi.norm(), 1.0);
    });
  } else {
    s.channel = channel_from(c, single(c.eta, "eta", c.scenario));
    evolve_open(DensityOperator::from_pure(psi0), s, [&](int t, const DensityOperator& rho) {
      if (wanted(t)) record(t, position_distribution(rho), reduced_coin(rho), rho.trace(), rho.purity());
    });
  }
  rec.tables.push_back(std::move(dist));
  rec.tables.push_back(std::move(summary));
}

void run_spectrum(const ExperimentConfig& c, const Lattice& lat, ResultRecord& rec) {
  const double theta = single(c.theta, "theta", c.scenario);
  const EigenPair at0 = eigen_system(theta, 0.0);
  Table table("spectrum", {"k", "e_exact", "e_linear", "e_h1", "e_h2", "e_dirac", "overlap_minus", "overlap_plus"});
  for (int j = 0; j < lat.size(); ++j) {
    const double k = lat.momentum_at(j);
    const EigenPair e = eigen_system(theta, k);
    table.add_row({k, exact_energies(theta, k).plus, linear_dispersion(theta, k).plus,
                   truncated_h1_energies(theta, k).plus, diagonalize(truncated_h2(theta, k)).e_plus,
                   dirac_energies(theta, k).plus, std::norm(at0.u_minus.dot(e.u_minus)),
                   std::norm(at0.u_plus.dot(e.u_plus))});
  }
  rec.tables.push_back(std::move(table));
}

using Runner = void (*)(const ExperimentConfig&, const Lattice&, ResultRecord&);

Runner runner_for(const std::string& name) {
  if (name == "qwalk") return run_qwalk;
  if (name == "dirac") return run_dirac;
  if (name == "catstates") return run_catstates;
  if (name == "catfourier") return run_catfourier;
  if (name == "returnk0") return run_returnk0;
  if (name == "decohere") return run_decohere;
  if (name == "revival") return run_revival;
  if (name == "decoherence") return run_decoherence;
  if (name == "control") return run_control;
  if (name == "evolve") return run_evolve;
  if (name == "spectrum") return run_spectrum;
  return nullptr;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

const std::vector<ScenarioInfo>& scenarios() { return kScenarios; }

std::uint64_t density_run_bytes(int lattice_size) {
  const auto dim = 2 * static_cast<std::uint64_t>(lattice_size);
  return dim * dim * sizeof(Complex);
}

int resolved_lattice_size(const ExperimentConfig& c) {
  if (c.lattice > 0) return c.lattice;
  if (c.scenario == "spectrum") return 256;
  const auto [steps, sigma] = lattice_demand(c);
  return recommended_lattice_size(steps, sigma);
}

std::uint64_t predicted_bytes(const ExperimentConfig& c) {
  if (!uses_channel(c)) return 0;
  const int jobs = density_jobs(c);
  return static_cast<std::uint64_t>(worker_count(c, jobs)) * density_run_bytes(resolved_lattice_size(c));
}

ExperimentConfig resolve(ExperimentConfig c) {
  if (c.scenario.empty()) throw ConfigError("scenario", "no scenario given");
  if (!runner_for(c.scenario)) throw ConfigError("scenario", "unknown scenario '" + c.scenario + "'");

  const std::string& s = c.scenario;
  if (s == "dirac" && is_default(c, "theta")) c.theta = {kPi / 2.4};
  if (s == "returnk0" && is_default(c, "k0")) c.k0 = {0.0, kPi / 8.0, kPi / 4.0, kPi / 2.0};
  if (s == "decohere") {
    if (is_default(c, "eta")) c.eta = {0.01};
    if (is_default(c, "steps")) c.steps = 250;
  }
  if (s == "catfourier" && is_default(c, "coin")) c.coin = "symmetric";
  if (s == "revival" && is_default(c, "steps")) c.steps = 97;
  if (s == "decoherence") {
    if (is_default(c, "steps")) c.steps = 250;
    if (is_default(c, "eta")) c.eta = {1e-4, 1e-3, 1e-2};
  }
  if (s == "control") {
    if (is_default(c, "sigma")) c.sigma = 9.0;
    if (is_default(c, "steps")) c.steps = 100;
  }
  if (s == "qwalk" && is_default(c, "snapshots") && is_default(c, "steps")) c.snapshots = {90, 120, 150};
  if (c.snapshots.empty()) c.snapshots = {c.steps};
  if (s == "qwalk" && is_default(c, "steps")) c.steps = max_of(c.snapshots);
  for (int t : c.snapshots) {
    if (t > c.steps) throw ConfigError("snapshots", "snapshot " + std::to_string(t) + " exceeds steps");
  }
  if (c.theta.empty() || c.k0.empty() || c.eta.empty() || c.p.empty() || c.n.empty() || c.width_sigmas.empty()) {
    throw ConfigError("", "list-valued keys need at least one entry");
  }
  if (s == "decoherence") {
    for (double e : c.eta) {
      if (e <= 0.0) throw ConfigError("eta", "decoherence sweeps need eta > 0; the noiseless run is reported separately");
    }
  }
  return c;
}

ResultRecord run_scenario(const ExperimentConfig& config) {
  const Runner runner = runner_for(config.scenario);
  if (!runner) throw ConfigError("scenario", "unknown scenario '" + config.scenario + "'");

  const std::uint64_t predicted = predicted_bytes(config);
  const auto budget = static_cast<std::uint64_t>(config.budget_mb * 1024.0 * 1024.0);
  if (predicted > budget) throw ResourceError(predicted, budget);

  const int size = resolved_lattice_size(config);
  ResultRecord rec;
  rec.scenario = config.scenario;
  rec.metadata = describe(config);
  rec.metadata.emplace_back("lattice_size", std::to_string(size));
  rec.metadata.emplace_back("lattice_auto", config.lattice == 0 ? "true" : "false");
  rec.metadata.emplace_back("predicted_bytes", std::to_string(predicted));
  rec.metadata.emplace_back("version", CATWALK_VERSION);
  if (config.timestamp) rec.metadata.emplace_back("generated_at", utc_now());

  try {
    runner(config, Lattice(size), rec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  return rec;
}

}  // namespace catwalk
