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

#include "catwalk/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace catwalk {
namespace {

void require_eta(double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("eta must be >= 0, got " + std::to_string(eta));
}

Matrix2 pauli_x() {
  Matrix2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

}  // namespace

double KrausPair::completeness_error() const {
  const Matrix2 sum = m0.adjoint() * m0 + m1.adjoint() * m1 - Matrix2::Identity();
  return sum.cwiseAbs().maxCoeff();
}

KrausPair amplitude_damping_kraus(double eta) {
  require_eta(eta);
  KrausPair k;
  k.m0 << 1.0, 0.0, 0.0, std::exp(-eta / 2.0);
  k.m1 << 0.0, std::sqrt(-std::expm1(-eta)), 0.0, 0.0;
  return k;
}

KrausPair bit_flip_kraus(double eta) {
  require_eta(eta);
  return {std::exp(-eta / 2.0) * Matrix2::Identity(), std::sqrt(-std::expm1(-eta)) * pauli_x()};
}

namespace detail {

void dephase_inplace(Eigen::MatrixXcd& rho, double eta, ChannelTarget target) {
  require_eta(eta);
  if (eta == 0.0) return;
  const double lambda = std::exp(-eta);
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index j = 0; j < dim; ++j) {
    Complex* col = rho.col(j).data();
    for (Eigen::Index i = 0; i < dim; ++i) {
      bool off = false;
      switch (target) {
        case ChannelTarget::coin: off = (i % 2) != (j % 2); break;
        case ChannelTarget::walker: off = (i / 2) != (j / 2); break;
        case ChannelTarget::both: off = i != j; break;
      }
      if (off) col[i] *= lambda;
    }
  }
}

// Acts block-wise on the 2x2 coin blocks, so no full-size temporary is needed.
void kraus_inplace(Eigen::MatrixXcd& rho, const KrausPair& kraus) {
  if (kraus.completeness_error() > 1e-12) throw std::invalid_argument("Kraus pair is not trace preserving");
  const Matrix2 a0 = kraus.m0.adjoint();
  const Matrix2 a1 = kraus.m1.adjoint();
  const Eigen::Index blocks = rho.rows() / 2;
  for (Eigen::Index bj = 0; bj < blocks; ++bj) {
    for (Eigen::Index bi = 0; bi < blocks; ++bi) {
      auto block = rho.block<2, 2>(2 * bi, 2 * bj);
      const Matrix2 b = block;
      block = kraus.m0 * b * a0 + kraus.m1 * b * a1;
    }
  }
}

void channel_inplace(Eigen::MatrixXcd& rho, const ChannelSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case ChannelKind::dephasing: dephase_inplace(rho, spec.eta, spec.target); break;
    case ChannelKind::amplitude_damping: kraus_inplace(rho, amplitude_damping_kraus(spec.eta)); break;
    case ChannelKind::bit_flip: kraus_inplace(rho, bit_flip_kraus(spec.eta)); break;
  }
}

}  // namespace detail

DensityOperator dephase(const DensityOperator& rho, double eta, ChannelTarget target) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::dephase_inplace(m, eta, target);
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

DensityOperator apply_coin_channel(const DensityOperator& rho, const KrausPair& kraus) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::kraus_inplace(m, kraus);
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

DensityOperator apply_channel(const DensityOperator& rho, const ChannelSpec& spec) {
  Eigen::MatrixXcd m = rho.matrix();
  detail::channel_inplace(m, spec);
  return DensityAccess::wrap(rho.lattice(), std::move(m));
}

DensityOperator evolve_open(DensityOperator rho, const Schedule& schedule, const DensityObserver& observer) {
  schedule.validate();
  const int n = rho.lattice().size();
  const Matrix2 coin = coin_operator(schedule.theta).matrix();

  Eigen::MatrixXcd& m = DensityAccess::matrix(rho);
  auto apply_gates = [&](int s) {
    for (const auto& g : schedule.coin_gates) {
      if (g.step == s) detail::density_coin_inplace(m, n, g.gate.matrix());
    }
  };

  if (observer) observer(0, rho);
  for (int s = 0; s < schedule.total_steps; ++s) {
    apply_gates(s);
    detail::density_step_inplace(m, n, coin, schedule.fm_phase_at(s));
    if (schedule.channel) detail::channel_inplace(m, *schedule.channel);
    if (observer) observer(s + 1, rho);
  }
  apply_gates(schedule.total_steps);
  return rho;
}

Trajectory<DensityOperator> evolve_open_with_snapshots(const DensityOperator& rho0, const Schedule& schedule,
                                                       const std::vector<int>& snapshot_steps) {
  for (int t : snapshot_steps) {
    if (t < 0 || t > schedule.total_steps) {
      throw std::invalid_argument("snapshot step " + std::to_string(t) + " outside the schedule");
    }
  }
  std::vector<std::pair<int, DensityOperator>> snaps;
  auto observer = [&](int t, const DensityOperator& rho) {
    if (std::find(snapshot_steps.begin(), snapshot_steps.end(), t) != snapshot_steps.end()) snaps.emplace_back(t, rho);
  };
  DensityOperator final_state = evolve_open(rho0, schedule, observer);
  return {std::move(final_state), std::move(snaps)};
}

}  // namespace catwalk
