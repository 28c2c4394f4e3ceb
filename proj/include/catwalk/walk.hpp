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

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "catwalk/channel_spec.hpp"
#include "catwalk/lattice.hpp"

namespace catwalk {

/// 2x2 unitary acting on the coin at every site.
class CoinMatrix {
 public:
  /// Throws std::invalid_argument unless ||U^dagger U - 1||_max <= tol.
  explicit CoinMatrix(const Matrix2& m, double tol = 1e-10);

  const Matrix2& matrix() const { return m_; }
  Complex operator()(int r, int c) const { return m_(r, c); }
  CoinMatrix adjoint() const { return CoinMatrix(m_.adjoint()); }

  static CoinMatrix identity() { return CoinMatrix(Matrix2::Identity()); }

 private:
  Matrix2 m_;
};

/// C(theta) = [[cos, sin], [sin, -cos]] in the {up, down} basis.
CoinMatrix coin_operator(double theta);
/// sigma_y = [[0, -i], [i, 0]], the reversal gate.
CoinMatrix pauli_y();

PureState apply_coin(const PureState& state, const CoinMatrix& u);
/// Up component moves x -> x+1, down component x -> x-1, periodic.
PureState apply_shift(const PureState& state);
/// Multiplies site x by exp(i phi x) on both coin levels.
PureState apply_fm(const PureState& state, double phi);

/// One walk step: coin, then shift.
PureState step(const PureState& state, double theta);
/// Coin, shift, then the momentum-shift phase.
PureState step_generalized(const PureState& state, double theta, double phi);

/// Steps [start, end) run with the generalized walk at phase phi.
struct FmWindow {
  int start = 0;
  int end = 0;
  double phi = 0.0;
};

/// Gate applied to the coin before step `step` (or at the very end when
/// step == total_steps).
struct CoinGate {
  int step = 0;
  CoinMatrix gate = CoinMatrix::identity();
};

struct Schedule {
  int total_steps = 0;
  double theta = 0.0;
  std::vector<FmWindow> fm_windows;
  std::vector<CoinGate> coin_gates;
  std::optional<ChannelSpec> channel;

  /// Throws std::invalid_argument on negative step counts, windows or gates
  /// outside [0, total_steps], empty or overlapping windows, or an invalid
  /// channel.
  void validate() const;
  /// Phase for step index s, or nullopt outside every window.
  std::optional<double> fm_phase_at(int s) const;
};

template <class State>
struct Trajectory {
  State final_state;
  std::vector<std::pair<int, State>> snapshots;
};

/// Called with (t, state) for t = 0 and after every completed step.
using PureObserver = std::function<void(int, const PureState&)>;
using DensityObserver = std::function<void(int, const DensityOperator&)>;

/// Runs the schedule. Per step s: coin gates scheduled at s, then Z or the
/// generalized step when s lies in an F_m window. Gates at total_steps are
/// applied after the last step. Channels are ignored here; see evolve_open.
PureState evolve(const PureState& state, const Schedule& schedule, const PureObserver& observer = {});
/// Same, returning the states after the listed step counts.
Trajectory<PureState> evolve_with_snapshots(const PureState& state, const Schedule& schedule,
                                            const std::vector<int>& snapshot_steps);

/// rho -> Z rho Z^dagger.
DensityOperator step_density(const DensityOperator& rho, double theta);
DensityOperator step_density_generalized(const DensityOperator& rho, double theta, double phi);
/// rho -> (1 (x) U) rho (1 (x) U)^dagger.
DensityOperator apply_coin_density(const DensityOperator& rho, const CoinMatrix& u);

namespace detail {

// In-place kernels shared by the pure and density paths. `stride` is the
// distance between consecutive composite indices.
void walk_step_inplace(Complex* data, std::ptrdiff_t stride, int n, const Matrix2& coin,
                       std::optional<double> phi, std::vector<Complex>& scratch);
void coin_inplace(Complex* data, std::ptrdiff_t stride, int n, const Matrix2& coin);

// rho -> W rho W^dagger where W is the step with the given coin/phase.
void density_step_inplace(Eigen::MatrixXcd& rho, int n, const Matrix2& coin, std::optional<double> phi);
void density_coin_inplace(Eigen::MatrixXcd& rho, int n, const Matrix2& coin);

}  // namespace detail

}  // namespace catwalk
