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

#include "catwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace catwalk {

std::string_view to_string(ChannelKind kind) {
  switch (kind) {
    case ChannelKind::dephasing: return "dephasing";
    case ChannelKind::amplitude_damping: return "amplitude_damping";
    case ChannelKind::bit_flip: return "bit_flip";
  }
  return "unknown";
}

std::string_view to_string(ChannelTarget target) {
  switch (target) {
    case ChannelTarget::coin: return "coin";
    case ChannelTarget::walker: return "walker";
    case ChannelTarget::both: return "both";
  }
  return "unknown";
}

std::optional<ChannelKind> parse_channel_kind(std::string_view text) {
  if (text == "dephasing") return ChannelKind::dephasing;
  if (text == "amplitude_damping") return ChannelKind::amplitude_damping;
  if (text == "bit_flip") return ChannelKind::bit_flip;
  return std::nullopt;
}

std::optional<ChannelTarget> parse_channel_target(std::string_view text) {
  if (text == "coin") return ChannelTarget::coin;
  if (text == "walker") return ChannelTarget::walker;
  if (text == "both") return ChannelTarget::both;
  return std::nullopt;
}

void ChannelSpec::validate() const {
  if (!(eta >= 0.0)) throw std::invalid_argument("channel eta must be >= 0");
  if (kind != ChannelKind::dephasing && target != ChannelTarget::coin) {
    throw std::invalid_argument(std::string(to_string(kind)) + " acts on the coin only");
  }
}

CoinMatrix::CoinMatrix(const Matrix2& m, double tol) : m_(m) {
  const double err = (m.adjoint() * m - Matrix2::Identity()).cwiseAbs().maxCoeff();
  if (err > tol) throw std::invalid_argument("coin matrix is not unitary (error " + std::to_string(err) + ")");
}

CoinMatrix coin_operator(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix2 m;
  m << c, s, s, -c;
  return CoinMatrix(m);
}

CoinMatrix pauli_y() {
  Matrix2 m;
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return CoinMatrix(m);
}

namespace detail {

void coin_inplace(Complex* data, std::ptrdiff_t stride, int n, const Matrix2& coin) {
  const Complex c00 = coin(0, 0), c01 = coin(0, 1), c10 = coin(1, 0), c11 = coin(1, 1);
  for (int i = 0; i < n; ++i) {
    Complex& u = data[(2 * i) * stride];
    Complex& d = data[(2 * i + 1) * stride];
    const Complex nu = c00 * u + c01 * d;
    const Complex nd = c10 * u + c11 * d;
    u = nu;
    d = nd;
  }
}

void walk_step_inplace(Complex* data, std::ptrdiff_t stride, int n, const Matrix2& coin,
                       std::optional<double> phi, std::vector<Complex>& scratch) {
  scratch.resize(2 * static_cast<std::size_t>(n));
  const Complex c00 = coin(0, 0), c01 = coin(0, 1), c10 = coin(1, 0), c11 = coin(1, 1);
  for (int i = 0; i < n; ++i) {
    const Complex u = data[(2 * i) * stride];
    const Complex d = data[(2 * i + 1) * stride];
    const int right = (i + 1 == n) ? 0 : i + 1;
    const int left = (i == 0) ? n - 1 : i - 1;
    scratch[2 * right] = c00 * u + c01 * d;
    scratch[2 * left + 1] = c10 * u + c11 * d;
  }
  if (phi) {
    const int min_site = -n / 2;
    for (int i = 0; i < n; ++i) {
      const Complex phase = std::polar(1.0, *phi * static_cast<double>(min_site + i));
      scratch[2 * i] *= phase;
      scratch[2 * i + 1] *= phase;
    }
  }
  for (int i = 0; i < 2 * n; ++i) data[i * stride] = scratch[i];
}

namespace {

// Eigen's adjointInPlace evaluates into a temporary; transposeInPlace swaps
// in place for square matrices.
void adjoint_inplace(Eigen::MatrixXcd& m) {
  m.transposeInPlace();
  m = m.conjugate();
}

}  // namespace

// W rho W^dagger = W (W rho)^dagger for Hermitian rho, so both passes act on
// contiguous columns.
void density_step_inplace(Eigen::MatrixXcd& rho, int n, const Matrix2& coin, std::optional<double> phi) {
  std::vector<Complex> scratch;
  for (Eigen::Index j = 0; j < rho.cols(); ++j) walk_step_inplace(rho.col(j).data(), 1, n, coin, phi, scratch);
  adjoint_inplace(rho);
  for (Eigen::Index j = 0; j < rho.cols(); ++j) walk_step_inplace(rho.col(j).data(), 1, n, coin, phi, scratch);
}

void density_coin_inplace(Eigen::MatrixXcd& rho, int n, const Matrix2& coin) {
  for (Eigen::Index j = 0; j < rho.cols(); ++j) coin_inplace(rho.col(j).data(), 1, n, coin);
  adjoint_inplace(rho);
  for (Eigen::Index j = 0; j < rho.cols(); ++j) coin_inplace(rho.col(j).data(), 1, n, coin);
}

}  // namespace detail

namespace {

void require_position(const PureState& state) {
  if (state.basis() != Basis::position) throw std::invalid_argument("walk operators act on position-basis states");
}

std::vector<Complex> copy_amplitudes(const PureState& state) {
  return {state.amplitudes().begin(), state.amplitudes().end()};
}

}  // namespace

PureState apply_coin(const PureState& state, const CoinMatrix& u) {
  require_position(state);
  auto amp = copy_amplitudes(state);
  detail::coin_inplace(amp.data(), 1, state.lattice().size(), u.matrix());
  return PureState(state.lattice(), std::move(amp));
}

PureState apply_shift(const PureState& state) {
  require_position(state);
  auto amp = copy_amplitudes(state);
  std::vector<Complex> scratch;
  detail::walk_step_inplace(amp.data(), 1, state.lattice().size(), Matrix2::Identity(), std::nullopt, scratch);
  return PureState(state.lattice(), std::move(amp));
}

PureState apply_fm(const PureState& state, double phi) {
  require_position(state);
  auto amp = copy_amplitudes(state);
  const Lattice& lat = state.lattice();
  for (int i = 0; i < lat.size(); ++i) {
    const Complex phase = std::polar(1.0, phi * lat.site_at(i));
    amp[2 * i] *= phase;
    amp[2 * i + 1] *= phase;
  }
  return PureState(lat, std::move(amp));
}

PureState step(const PureState& state, double theta) {
  require_position(state);
  auto amp = copy_amplitudes(state);
  std::vector<Complex> scratch;
  detail::walk_step_inplace(amp.data(), 1, state.lattice().size(), coin_operator(theta).matrix(), std::nullopt,
                            scratch);
  return PureState(state.lattice(), std::move(amp));
}

PureState step_generalized(const PureState& state, double theta, double phi) {
  require_position(state);
  auto amp = copy_amplitudes(state);
  std::vector<Complex> scratch;
  detail::walk_step_inplace(amp.data(), 1, state.lattice().size(), coin_operator(theta).matrix(), phi, scratch);
  return PureState(state.lattice(), std::move(amp));
}

void Schedule::validate() const {
  if (total_steps < 0) throw std::invalid_argument("total_steps must be >= 0");
  std::vector<FmWindow> sorted = fm_windows;
  std::sort(sorted.begin(), sorted.end(), [](const FmWindow& a, const FmWindow& b) { return a.start < b.start; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& w = sorted[i];
    if (w.start < 0 || w.end > total_steps || w.start >= w.end) {
      throw std::invalid_argument("F_m window [" + std::to_string(w.start) + ", " + std::to_string(w.end) +
                                  ") outside [0, " + std::to_string(total_steps) + "] or empty");
    }
    if (i > 0 && sorted[i - 1].end > w.start) throw std::invalid_argument("F_m windows overlap");
  }
  for (const auto& g : coin_gates) {
    if (g.step < 0 || g.step > total_steps) {
      throw std::invalid_argument("coin gate at step " + std::to_string(g.step) + " outside [0, " +
                                  std::to_string(total_steps) + "]");
    }
  }
  if (channel) channel->validate();
}

std::optional<double> Schedule::fm_phase_at(int s) const {
  for (const auto& w : fm_windows) {
    if (s >= w.start && s < w.end) return w.phi;
  }
  return std::nullopt;
}

PureState evolve(const PureState& state, const Schedule& schedule, const PureObserver& observer) {
  schedule.validate();
  require_position(state);
  const Lattice lat = state.lattice();
  const int n = lat.size();
  const Matrix2 coin = coin_operator(schedule.theta).matrix();

  auto amp = copy_amplitudes(state);
  std::vector<Complex> scratch;
  auto apply_gates = [&](int s) {
    for (const auto& g : schedule.coin_gates) {
      if (g.step == s) detail::coin_inplace(amp.data(), 1, n, g.gate.matrix());
    }
  };

  if (observer) observer(0, state);
  for (int s = 0; s < schedule.total_steps; ++s) {
    apply_gates(s);
    detail::walk_step_inplace(amp.data(), 1, n, coin, schedule.fm_phase_at(s), scratch);
    if (observer) observer(s + 1, PureState(lat, amp));
  }
  apply_gates(schedule.total_steps);
  return PureState(lat, std::move(amp));
}

Trajectory<PureState> evolve_with_snapshots(const PureState& state, const Schedule& schedule,
                                            const std::vector<int>& snapshot_steps) {
  for (int t : snapshot_steps) {
    if (t < 0 || t > schedule.total_steps) {
      throw std::invalid_argument("snapshot step " + std::to_string(t) + " outside the schedule");
    }
  }
  std::vector<std::pair<int, PureState>> snaps;
  auto observer = [&](int t, const PureState& psi) {
    if (std::find(snapshot_steps.begin(), snapshot_steps.end(), t) != snapshot_steps.end()) {
      snaps.emplace_back(t, psi);
    }
  };
  PureState final_state = evolve(state, schedule, observer);
  return {std::move(final_state), std::move(snaps)};
}

DensityOperator step_density(const DensityOperator& rho, double theta) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::density_step_inplace(m, rho.lattice().size(), coin_operator(theta).matrix(), std::nullopt);
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

DensityOperator step_density_generalized(const DensityOperator& rho, double theta, double phi) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::density_step_inplace(m, rho.lattice().size(), coin_operator(theta).matrix(), phi);
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

DensityOperator apply_coin_density(const DensityOperator& rho, const CoinMatrix& u) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::density_coin_inplace(m, rho.lattice().size(), u.matrix());
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

}  // namespace catwalk
