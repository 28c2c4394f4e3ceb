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

#include "catwalk/channel_spec.hpp"
#include "catwalk/lattice.hpp"
#include "catwalk/walk.hpp"

namespace catwalk {

/// Two-element Kraus decomposition of a coin channel.
struct KrausPair {
  Matrix2 m0;
  Matrix2 m1;

  /// ||M0^dagger M0 + M1^dagger M1 - 1||_max
  double completeness_error() const;
};

/// A0 = diag(1, e^{-eta/2}), A1 = [[0, sqrt(1 - e^{-eta})], [0, 0]].
KrausPair amplitude_damping_kraus(double eta);
/// B0 = e^{-eta/2} 1, B1 = sqrt(1 - e^{-eta}) sigma_x.
KrausPair bit_flip_kraus(double eta);

/// Scales off-diagonal elements in the targeted index by e^{-eta}:
/// walker: x != x', coin: c != c', both: (x, c) != (x', c').
DensityOperator dephase(const DensityOperator& rho, double eta, ChannelTarget target);

/// rho -> sum_i (1 (x) M_i) rho (1 (x) M_i)^dagger. Throws if the pair is not
/// trace preserving within 1e-12.
DensityOperator apply_coin_channel(const DensityOperator& rho, const KrausPair& kraus);

DensityOperator apply_channel(const DensityOperator& rho, const ChannelSpec& spec);

/// Per step: scheduled coin gates, the unitary step, then the channel (if
/// any). The observer sees t = 0 and the state after every step. rho is
/// evolved in place, so passing an rvalue keeps a single matrix alive.
DensityOperator evolve_open(DensityOperator rho, const Schedule& schedule,
                            const DensityObserver& observer = {});
Trajectory<DensityOperator> evolve_open_with_snapshots(const DensityOperator& rho0, const Schedule& schedule,
                                                       const std::vector<int>& snapshot_steps);

namespace detail {

void dephase_inplace(Eigen::MatrixXcd& rho, double eta, ChannelTarget target);
void kraus_inplace(Eigen::MatrixXcd& rho, const KrausPair& kraus);
void channel_inplace(Eigen::MatrixXcd& rho, const ChannelSpec& spec);

}  // namespace detail

}  // namespace catwalk
