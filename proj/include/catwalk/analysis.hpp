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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "catwalk/lattice.hpp"

namespace catwalk {

/// P(x) over grid index (site x = lattice.site_at(i)).
std::vector<double> position_distribution(const PureState& state);
/// Diagonal of the walker marginal.
std::vector<double> position_distribution(const DensityOperator& rho);
std::vector<double> position_distribution(const WalkerState& walker);
/// |psi(k_j)|^2 summed over the coin.
std::vector<double> momentum_distribution(const PureState& state);

/// Partial trace over the walker.
Matrix2 reduced_coin(const PureState& state);
Matrix2 reduced_coin(const DensityOperator& rho);
/// -sum lambda log2 lambda over the eigenvalues of a 2x2 density matrix.
double entropy_bits(const Matrix2& coin_density);
double entanglement_entropy(const PureState& state);

/// Psi = sum_i sqrt(weights[i]) |walkers[i]> (x) |coins[i]>.
struct SchmidtDecomposition {
  std::array<double, 2> weights{};
  std::array<Vector2, 2> coins;
  std::array<WalkerState, 2> walkers;
  /// Weights closer than the degeneracy tolerance; the coin basis was then
  /// chosen to diagonalize the first moment sum_x x psi_x psi_x^dagger.
  bool degenerate = false;

  PureState reconstruct() const;
};

/// Ordered by weight; on degeneracy the component with the larger mean
/// position comes first. Each coin vector's leading component is real and
/// positive. A zero-weight component gets an all-zero walker.
SchmidtDecomposition schmidt_components(const PureState& state, double degeneracy_tol = 1e-2);

struct Moments {
  double mean = 0.0;
  double width = 0.0;
};

/// First moment and standard deviation in site labels.
Moments moments(std::span<const double> p, const Lattice& lattice);
/// Standard deviation with the array index as position.
double packet_width(std::span<const double> p);
/// Widths of the right- and left-moving components. These come from the
/// first-moment coin basis even when the Schmidt weights are not degenerate:
/// when the branches' coin states are not orthogonal the exact Schmidt
/// vectors mix both packets. Each component is measured on its own side of
/// the midpoint between the two component peaks; the residue of the other
/// packet is excluded.
std::array<double, 2> component_widths(const PureState& state);
/// sum_x min(a(x), b(x))
double distribution_overlap(std::span<const double> a, std::span<const double> b);

struct CoinProjection {
  WalkerState walker;  // normalized
  double success_probability = 0.0;
};

/// Walker state <chi'|Psi>. Throws std::domain_error when its squared norm is
/// below 1e-12.
CoinProjection project_coin(const PureState& state, const CoinState& chi);

/// Psi_-(k) = <u_-(k)|Psi(k)> and Psi_+(k), unnormalized, momentum basis.
std::array<WalkerState, 2> branch_components(const PureState& state, double theta);

struct FringeAnalysis {
  std::vector<double> momenta;
  std::vector<double> probability;
  /// Absent when no oscillation stands out of the envelope.
  std::optional<double> spacing;
  double visibility = 0.0;
};

/// Fringe period from the dominant non-central peak of the power spectrum of
/// P(k) (the Fourier transform of its autocorrelation). If the packets
/// overlap too much for that peak to separate from the central lobe, the
/// distance between the minima around the main maximum is used. Visibility is the
/// (max - min)/(max + min) contrast where the upper envelope exceeds half of
/// the maximum.
FringeAnalysis momentum_fringes(const WalkerState& walker);

struct CatMetrics {
  int left_peak = 0;
  int right_peak = 0;
  double left_mass = 0.0;
  double right_mass = 0.0;
  /// Mass within the central 20% of [left_peak, right_peak].
  double residual = 0.0;
  int separation = 0;
  /// min/max of the two masses.
  double mass_balance = 0.0;
  bool unimodal = false;
};

/// Peaks are maxima within +-5 sites of the [1, 2, 1]/4 smoothed
/// distribution (which removes the walk's parity zeros), leftmost on ties;
/// a second peak must reach 1% of the first. Masses split at the midpoint.
CatMetrics cat_metrics(std::span<const double> p, const Lattice& lattice);

}  // namespace catwalk
