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

#include "catwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "catwalk/spectral.hpp"
#include "fourier.hpp"

namespace catwalk {
namespace {

Vector2 coin_at(const PureState& state, int i) {
  return {state.amplitude(i, Coin::up), state.amplitude(i, Coin::down)};
}

void require_position(const PureState& state) {
  if (state.basis() != Basis::position) throw std::invalid_argument("analysis expects a position-basis state");
}

}  // namespace

std::vector<double> position_distribution(const PureState& state) {
  require_position(state);
  const int n = state.lattice().size();
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = std::norm(state.amplitude(i, Coin::up)) + std::norm(state.amplitude(i, Coin::down));
  return p;
}

std::vector<double> position_distribution(const DensityOperator& rho) {
  const int n = rho.lattice().size();
  const auto& m = rho.matrix();
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = m(2 * i, 2 * i).real() + m(2 * i + 1, 2 * i + 1).real();
  return p;
}

std::vector<double> position_distribution(const WalkerState& walker) {
  std::vector<double> p(walker.amplitudes.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(walker.amplitudes[i]);
  return p;
}

std::vector<double> momentum_distribution(const PureState& state) {
  const PureState mom = state.basis() == Basis::momentum ? state : to_momentum(state);
  const int n = mom.lattice().size();
  std::vector<double> p(n);
  for (int j = 0; j < n; ++j) p[j] = std::norm(mom.amplitude(j, Coin::up)) + std::norm(mom.amplitude(j, Coin::down));
  return p;
}

Matrix2 reduced_coin(const PureState& state) {
  Matrix2 rc = Matrix2::Zero();
  for (int i = 0; i < state.lattice().size(); ++i) {
    const Vector2 v = coin_at(state, i);
    rc += v * v.adjoint();
  }
  return rc;
}

Matrix2 reduced_coin(const DensityOperator& rho) {
  Matrix2 rc = Matrix2::Zero();
  const auto& m = rho.matrix();
  for (int i = 0; i < rho.lattice().size(); ++i) rc += m.block<2, 2>(2 * i, 2 * i);
  return rc;
}

double entropy_bits(const Matrix2& coin_density) {
  const Matrix2 herm = 0.5 * (coin_density + coin_density.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix2> solver(herm, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (int i = 0; i < 2; ++i) {
    const double l = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return std::clamp(s, 0.0, 1.0);
}

double entanglement_entropy(const PureState& state) { return entropy_bits(reduced_coin(state)); }

PureState SchmidtDecomposition::reconstruct() const {
  const Lattice& lat = walkers[0].lattice;
  std::vector<Complex> amp(2 * lat.size(), Complex(0.0));
  for (int c = 0; c < 2; ++c) {
    const double w = std::sqrt(weights[c]);
    for (int i = 0; i < lat.size(); ++i) {
      amp[2 * i] += w * walkers[c].amplitudes[i] * coins[c](0);
      amp[2 * i + 1] += w * walkers[c].amplitudes[i] * coins[c](1);
    }
  }
  return PureState(lat, std::move(amp));
}

SchmidtDecomposition schmidt_components(const PureState& state, double degeneracy_tol) {
  require_position(state);
  const Lattice& lat = state.lattice();
  const int n = lat.size();

  const EigenPair rc = diagonalize(reduced_coin(state));
  const bool degenerate = (rc.e_plus - rc.e_minus) < degeneracy_tol;
  std::array<Vector2, 2> coins{rc.u_plus, rc.u_minus};
  if (degenerate) {
    Matrix2 first_moment = Matrix2::Zero();
    for (int i = 0; i < n; ++i) {
      const Vector2 v = coin_at(state, i);
      first_moment += static_cast<double>(lat.site_at(i)) * (v * v.adjoint());
    }
    const EigenPair fm = diagonalize(first_moment);
    coins = {fm.u_plus, fm.u_minus};
  }

  std::array<std::vector<Complex>, 2> amps{std::vector<Complex>(n), std::vector<Complex>(n)};
  std::array<double, 2> weights{};
  std::array<double, 2> means{};
  for (int c = 0; c < 2; ++c) {
    for (int i = 0; i < n; ++i) {
      amps[c][i] = coins[c].dot(coin_at(state, i));
      const double pi = std::norm(amps[c][i]);
      weights[c] += pi;
      means[c] += pi * lat.site_at(i);
    }
    if (weights[c] > 0.0) {
      means[c] /= weights[c];
      const double inv = 1.0 / std::sqrt(weights[c]);
      for (auto& a : amps[c]) a *= inv;
    } else {
      std::fill(amps[c].begin(), amps[c].end(), Complex(0.0));
    }
  }
  const bool swap = degenerate ? means[1] > means[0] : weights[1] > weights[0];
  if (swap) {
    std::swap(coins[0], coins[1]);
    std::swap(amps[0], amps[1]);
    std::swap(weights[0], weights[1]);
  }
  return SchmidtDecomposition{
      .weights = weights,
      .coins = coins,
      .walkers = {WalkerState{lat, std::move(amps[0])}, WalkerState{lat, std::move(amps[1])}},
      .degenerate = degenerate,
  };
}

Moments moments(std::span<const double> p, const Lattice& lattice) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += p[i];
    mean += p[i] * lattice.site_at(static_cast<int>(i));
  }
  if (total <= 0.0) return {};
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = lattice.site_at(static_cast<int>(i)) - mean;
    var += p[i] * d * d;
  }
  return {mean, std::sqrt(var / total)};
}

double packet_width(std::span<const double> p) {
  double total = 0.0;
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    total += p[i];
    mean += p[i] * static_cast<double>(i);
  }
  if (total <= 0.0) return 0.0;
  mean /= total;
  double var = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = static_cast<double>(i) - mean;
    var += p[i] * d * d;
  }
  return std::sqrt(var / total);
}

std::array<double, 2> component_widths(const PureState& state) {
  const SchmidtDecomposition sd = schmidt_components(state, 1.0);
  std::array<std::vector<double>, 2> p{position_distribution(sd.walkers[0]), position_distribution(sd.walkers[1])};
  const auto peak = [](const std::vector<double>& v) {
    return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
  };
  const int a = peak(p[0]);
  const int b = peak(p[1]);
  if (std::abs(a - b) < 2) return {packet_width(p[0]), packet_width(p[1])};

  // A leak of 1e-4 from the far packet would dominate the second moment, so
  // each component is measured on its own side of the split only.
  const double mid = 0.5 * (a + b);
  std::array<double, 2> widths{};
  for (int c = 0; c < 2; ++c) {
    const bool right = (c == 0 ? a : b) > mid;
    std::vector<double> side(p[c].size(), 0.0);
    for (std::size_t i = 0; i < side.size(); ++i) {
      if ((static_cast<double>(i) > mid) == right && static_cast<double>(i) != mid) side[i] = p[c][i];
    }
    const double mass = std::accumulate(side.begin(), side.end(), 0.0);
    if (mass > 0.0) {
      for (auto& v : side) v /= mass;
    }
    widths[c] = packet_width(side);
  }
  return widths;
}

double distribution_overlap(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("distributions differ in length");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::min(a[i], b[i]);
  return s;
}

CoinProjection project_coin(const PureState& state, const CoinState& chi) {
  const Lattice& lat = state.lattice();
  const Vector2 c = chi.vector();
  std::vector<Complex> amp(lat.size());
  double norm2 = 0.0;
  for (int i = 0; i < lat.size(); ++i) {
    amp[i] = c.dot(coin_at(state, i));
    norm2 += std::norm(amp[i]);
  }
  if (norm2 < 1e-12) throw std::domain_error("coin projection has vanishing success probability");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amp) a *= inv;
  return {WalkerState{lat, std::move(amp), state.basis()}, norm2};
}

std::array<WalkerState, 2> branch_components(const PureState& state, double theta) {
  const PureState mom = state.basis() == Basis::momentum ? state : to_momentum(state);
  const Lattice& lat = mom.lattice();
  std::vector<Complex> minus(lat.size());
  std::vector<Complex> plus(lat.size());
  for (int j = 0; j < lat.size(); ++j) {
    const EigenPair e = eigen_system(theta, lat.momentum_at(j));
    const Vector2 v = coin_at(mom, j);
    minus[j] = e.u_minus.dot(v);
    plus[j] = e.u_plus.dot(v);
  }
  return {WalkerState{lat, std::move(minus), Basis::momentum}, WalkerState{lat, std::move(plus), Basis::momentum}};
}

namespace {

// Skip the monotone central lobe, which carries the envelope, and take the
// strongest remaining frequency of the power spectrum.
std::optional<double> spectral_spacing(const std::vector<double>& p) {
  const std::vector<double> power = detail::power_spectrum(p);
  std::size_t m = 1;
  while (m < power.size() && power[m] < power[m - 1]) ++m;
  if (m >= power.size()) return std::nullopt;
  const auto peak = std::max_element(power.begin() + static_cast<std::ptrdiff_t>(m), power.end());
  if (power[0] <= 0.0 || *peak / power[0] < 1e-4) return std::nullopt;
  return 2.0 * kPi / static_cast<double>(peak - power.begin());
}

// When the packets overlap, the side peaks of the spectrum merge into the
// central lobe. The cos^2 zeros still bracket the main fringe.
std::optional<double> bracketing_minima_spacing(const std::vector<double>& p) {
  const int n = static_cast<int>(p.size());
  const int top = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
  int lo = top;
  while (lo > 0 && p[lo - 1] <= p[lo]) --lo;
  int hi = top;
  while (hi + 1 < n && p[hi + 1] <= p[hi]) ++hi;
  if (lo == 0 || hi == n - 1) return std::nullopt;
  if (p[lo] > 0.5 * p[top] || p[hi] > 0.5 * p[top]) return std::nullopt;
  // Require a genuine side lobe on both sides, not round-off in the tails.
  const int width = hi - lo;
  auto lobe = [&](int from, int dir) {
    double best = 0.0;
    for (int j = from; j >= 0 && j < n && std::abs(j - from) <= width; j += dir) best = std::max(best, p[j]);
    return best;
  };
  const double floor = 1e-6 * p[top];
  if (lobe(lo, -1) < std::max(floor, 2.0 * p[lo]) || lobe(hi, 1) < std::max(floor, 2.0 * p[hi])) return std::nullopt;
  return 2.0 * kPi * width / n;
}

}  // namespace

FringeAnalysis momentum_fringes(const WalkerState& walker) {
  const WalkerState mom = walker.basis == Basis::momentum ? walker : to_momentum(walker);
  const Lattice& lat = mom.lattice;
  const int n = lat.size();

  FringeAnalysis out;
  out.probability = position_distribution(mom);
  const double total = std::accumulate(out.probability.begin(), out.probability.end(), 0.0);
  if (total > 0.0) {
    for (auto& v : out.probability) v /= total;
  }
  out.momenta.resize(n);
  for (int j = 0; j < n; ++j) out.momenta[j] = lat.momentum_at(j);

  out.spacing = spectral_spacing(out.probability);
  if (!out.spacing) out.spacing = bracketing_minima_spacing(out.probability);
  if (!out.spacing) return out;

  const int reach = static_cast<int>(std::ceil(n * *out.spacing / (2.0 * kPi)));
  const double pmax = *std::max_element(out.probability.begin(), out.probability.end());
  double hi = 0.0;
  double lo = pmax;
  for (int j = 0; j < n; ++j) {
    const int a = std::max(0, j - reach);
    const int b = std::min(n - 1, j + reach);
    const double envelope = *std::max_element(out.probability.begin() + a, out.probability.begin() + b + 1);
    if (envelope < 0.5 * pmax) continue;
    hi = std::max(hi, out.probability[j]);
    lo = std::min(lo, out.probability[j]);
  }
  out.visibility = (hi + lo) > 0.0 ? (hi - lo) / (hi + lo) : 0.0;
  return out;
}

CatMetrics cat_metrics(std::span<const double> p, const Lattice& lattice) {
  const int n = static_cast<int>(p.size());
  if (n != lattice.size()) throw std::invalid_argument("distribution length does not match the lattice");
  std::vector<double> smooth(n);
  for (int i = 0; i < n; ++i) {
    const double left = i > 0 ? p[i - 1] : 0.0;
    const double right = i + 1 < n ? p[i + 1] : 0.0;
    smooth[i] = 0.25 * left + 0.5 * p[i] + 0.25 * right;
  }

  constexpr int kWindow = 5;
  std::vector<int> peaks;
  for (int i = 0; i < n; ++i) {
    if (smooth[i] <= 0.0) continue;
    bool is_peak = true;
    for (int d = 1; d <= kWindow && is_peak; ++d) {
      if (i - d >= 0 && smooth[i - d] >= smooth[i]) is_peak = false;
      if (i + d < n && smooth[i + d] > smooth[i]) is_peak = false;
    }
    if (is_peak) peaks.push_back(i);
  }
  std::stable_sort(peaks.begin(), peaks.end(), [&](int a, int b) { return smooth[a] > smooth[b]; });

  CatMetrics cm;
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (peaks.empty()) {
    cm.unimodal = true;
    return cm;
  }
  if (peaks.size() < 2 || smooth[peaks[1]] < 0.01 * smooth[peaks[0]]) {
    cm.unimodal = true;
    cm.left_peak = cm.right_peak = lattice.site_at(peaks[0]);
    cm.left_mass = total;
    return cm;
  }

  const int a = std::min(peaks[0], peaks[1]);
  const int b = std::max(peaks[0], peaks[1]);
  cm.left_peak = lattice.site_at(a);
  cm.right_peak = lattice.site_at(b);
  cm.separation = b - a;
  const double mid = 0.5 * (a + b);
  const double half_band = 0.1 * (b - a);
  for (int i = 0; i < n; ++i) {
    if (i < mid) {
      cm.left_mass += p[i];
    } else if (i > mid) {
      cm.right_mass += p[i];
    } else {
      cm.left_mass += 0.5 * p[i];
      cm.right_mass += 0.5 * p[i];
    }
    if (std::abs(i - mid) <= half_band) cm.residual += p[i];
  }
  const double hi = std::max(cm.left_mass, cm.right_mass);
  cm.mass_balance = hi > 0.0 ? std::min(cm.left_mass, cm.right_mass) / hi : 0.0;
  return cm;
}

}  // namespace catwalk
