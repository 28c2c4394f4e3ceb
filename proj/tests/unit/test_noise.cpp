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

#include <gtest/gtest.h>

#include <cmath>

#include "catwalk/analysis.hpp"
#include "catwalk/noise.hpp"
#include "test_util.hpp"

namespace catwalk {
namespace {

using testing::max_abs_diff;
using testing::random_density;

Eigen::MatrixXcd kron_identity(int n, const Matrix2& m) { return testing::dense_coin(Lattice(n), m); }

TEST(Kraus, ZeroStrengthIsIdentity) {
  for (const KrausPair& k : {amplitude_damping_kraus(0.0), bit_flip_kraus(0.0)}) {
    EXPECT_LT((k.m0 - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT(k.m1.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Kraus, Completeness) {
  for (double eta : {0.001, 0.01, 0.1, 1.0, 30.0}) {
    EXPECT_LE(amplitude_damping_kraus(eta).completeness_error(), 1e-14);
    EXPECT_LE(bit_flip_kraus(eta).completeness_error(), 1e-14);
  }
  EXPECT_THROW(amplitude_damping_kraus(-0.1), std::invalid_argument);
  EXPECT_THROW(bit_flip_kraus(-0.1), std::invalid_argument);
}

TEST(Kraus, Entries) {
  const double eta = 0.3;
  const KrausPair a = amplitude_damping_kraus(eta);
  EXPECT_NEAR(a.m0(1, 1).real(), std::exp(-eta / 2), 1e-15);
  EXPECT_NEAR(a.m1(0, 1).real(), std::sqrt(1 - std::exp(-eta)), 1e-15);
  EXPECT_EQ(a.m1(1, 0), Complex(0.0));
  const KrausPair b = bit_flip_kraus(eta);
  EXPECT_NEAR(b.m0(0, 0).real(), std::exp(-eta / 2), 1e-15);
  EXPECT_NEAR(b.m1(1, 0).real(), std::sqrt(1 - std::exp(-eta)), 1e-15);
}

TEST(Dephase, ScalesTargetedOffDiagonals) {
  std::mt19937_64 rng(41);
  const Lattice lat(6);
  const DensityOperator rho = random_density(lat, rng);
  const double eta = 0.37;
  const double l = std::exp(-eta);
  for (auto target : {ChannelTarget::coin, ChannelTarget::walker, ChannelTarget::both}) {
    const DensityOperator out = dephase(rho, eta, target);
    for (int i = 0; i < 12; ++i) {
      for (int j = 0; j < 12; ++j) {
        const bool coin_off = (i % 2) != (j % 2);
        const bool walker_off = (i / 2) != (j / 2);
        const bool off = target == ChannelTarget::coin ? coin_off : target == ChannelTarget::walker ? walker_off : i != j;
        const Complex expect = off ? l * rho.matrix()(i, j) : rho.matrix()(i, j);
        EXPECT_NEAR(std::abs(out.matrix()(i, j) - expect), 0.0, 1e-16);
      }
    }
    EXPECT_NEAR(out.trace(), rho.trace(), 1e-15);
  }
  EXPECT_THROW(dephase(rho, -1.0, ChannelTarget::coin), std::invalid_argument);
}

TEST(Dephase, LimitsAndSemigroup) {
  std::mt19937_64 rng(42);
  const Lattice lat(8);
  const DensityOperator rho = random_density(lat, rng);
  EXPECT_LT(max_abs_diff(dephase(rho, 0.0, ChannelTarget::both).matrix(), rho.matrix()), 1e-16);
  const Eigen::MatrixXcd diag = rho.matrix().diagonal().asDiagonal();
  EXPECT_LT(max_abs_diff(dephase(rho, 60.0, ChannelTarget::both).matrix(), diag), 1e-20);
  const auto twice = dephase(dephase(rho, 0.2, ChannelTarget::both), 0.5, ChannelTarget::both);
  EXPECT_LT(max_abs_diff(twice.matrix(), dephase(rho, 0.7, ChannelTarget::both).matrix()), 1e-12);
}

TEST(Dephase, CoinCoherenceAtOneSite) {
  const Lattice lat(4);
  const double s = 1.0 / std::sqrt(2.0);
  const DensityOperator rho = DensityOperator::from_pure(localized_state(lat, 0, CoinState(s, s)));
  const DensityOperator out = dephase(rho, 0.01, ChannelTarget::coin);
  const int i = lat.index_of(0);
  EXPECT_NEAR(out.matrix()(2 * i, 2 * i + 1).real(), 0.5 * std::exp(-0.01), 1e-15);
  EXPECT_NEAR(out.matrix()(2 * i, 2 * i).real(), 0.5, 1e-15);
}

TEST(CoinChannel, MatchesDenseKraus) {
  std::mt19937_64 rng(43);
  const Lattice lat(6);
  const DensityOperator rho = random_density(lat, rng);
  for (const KrausPair& k : {amplitude_damping_kraus(0.4), bit_flip_kraus(0.4)}) {
    const Eigen::MatrixXcd m0 = kron_identity(6, k.m0);
    const Eigen::MatrixXcd m1 = kron_identity(6, k.m1);
    const Eigen::MatrixXcd expect = m0 * rho.matrix() * m0.adjoint() + m1 * rho.matrix() * m1.adjoint();
    const DensityOperator out = apply_coin_channel(rho, k);
    EXPECT_LT(max_abs_diff(out.matrix(), expect), 1e-15);
    EXPECT_LE(out.hermiticity_error(), 1e-15);
    EXPECT_NEAR(out.trace(), 1.0, 1e-12);
  }
  const KrausPair id{Matrix2::Identity(), Matrix2::Zero()};
  EXPECT_LT(max_abs_diff(apply_coin_channel(rho, id).matrix(), rho.matrix()), 1e-16);
  const KrausPair bad{Matrix2::Identity(), Matrix2::Identity()};
  EXPECT_THROW(apply_coin_channel(rho, bad), std::invalid_argument);
}

TEST(CoinChannel, StrongDampingRelaxesToUp) {
  const Lattice lat(8);
  std::mt19937_64 rng(44);
  const auto walker = testing::random_amplitudes(lat.size(), rng);
  std::vector<Complex> amp(2 * lat.size());
  for (int i = 0; i < lat.size(); ++i) amp[2 * i + 1] = walker[i];
  const DensityOperator rho = DensityOperator::from_pure(PureState(lat, amp));
  const DensityOperator out = apply_coin_channel(rho, amplitude_damping_kraus(80.0));
  const Matrix2 coin = reduced_coin(out);
  EXPECT_NEAR(coin(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(coin(1, 1)), 0.0, 1e-12);
  const auto before = position_distribution(rho);
  const auto after = position_distribution(out);
  for (int i = 0; i < lat.size(); ++i) EXPECT_NEAR(before[i], after[i], 1e-12);
}

TEST(CoinChannel, TraceStableOverManyApplications) {
  std::mt19937_64 rng(45);
  const Lattice lat(10);
  DensityOperator rho = random_density(lat, rng);
  for (int i = 0; i < 250; ++i) rho = apply_coin_channel(rho, amplitude_damping_kraus(0.05));
  EXPECT_NEAR(rho.trace(), 1.0, 1e-10);
}

TEST(ChannelSpec, Validation) {
  EXPECT_THROW((ChannelSpec{ChannelKind::dephasing, -0.1, ChannelTarget::coin}.validate()), std::invalid_argument);
  EXPECT_THROW((ChannelSpec{ChannelKind::bit_flip, 0.1, ChannelTarget::walker}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ChannelSpec{ChannelKind::dephasing, 0.1, ChannelTarget::walker}.validate()));
  EXPECT_EQ(parse_channel_kind("amplitude_damping"), ChannelKind::amplitude_damping);
  EXPECT_EQ(parse_channel_target("both"), ChannelTarget::both);
  EXPECT_FALSE(parse_channel_kind("bogus").has_value());
  EXPECT_EQ(to_string(ChannelKind::bit_flip), "bit_flip");
}

TEST(EvolveOpen, ZeroStrengthMatchesPure) {
  const Lattice lat(48);
  const PureState psi = gaussian_position_state(lat, 2.0, 0, 0.0, CoinState::normalized(1.0, Complex(0, 1)));
  Schedule s;
  s.total_steps = 15;
  s.theta = kPi / 4;
  s.coin_gates = {{7, pauli_y()}};
  s.channel = ChannelSpec{ChannelKind::amplitude_damping, 0.0, ChannelTarget::coin};
  const DensityOperator rho = evolve_open(DensityOperator::from_pure(psi), s);
  const DensityOperator ref = DensityOperator::from_pure(evolve(psi, s));
  EXPECT_LT(max_abs_diff(rho.matrix(), ref.matrix()), 1e-10);
}

TEST(EvolveOpen, AppliesChannelAfterEachStep) {
  std::mt19937_64 rng(46);
  const Lattice lat(8);
  const DensityOperator rho0 = random_density(lat, rng);
  const ChannelSpec spec{ChannelKind::dephasing, 0.2, ChannelTarget::walker};
  Schedule s;
  s.total_steps = 3;
  s.theta = 0.5;
  s.channel = spec;
  DensityOperator manual = rho0;
  for (int i = 0; i < 3; ++i) manual = apply_channel(step_density(manual, 0.5), spec);
  const auto traj = evolve_open_with_snapshots(rho0, s, {0, 2, 3});
  ASSERT_EQ(traj.snapshots.size(), 3u);
  EXPECT_LT(max_abs_diff(traj.final_state.matrix(), manual.matrix()), 1e-14);
  EXPECT_LT(max_abs_diff(traj.snapshots[0].second.matrix(), rho0.matrix()), 1e-16);
}

// Trace, Hermiticity, positivity and purity over long runs for every channel.
TEST(EvolveOpen, InvariantsOverLongRuns) {
  const Lattice lat(64);
  const PureState psi = gaussian_position_state(lat, 3.0, 0, 0.0, CoinState::normalized(1.0, Complex(0, 1)));
  const std::vector<ChannelSpec> specs = {
      {ChannelKind::dephasing, 0.01, ChannelTarget::coin},
      {ChannelKind::dephasing, 0.01, ChannelTarget::walker},
      {ChannelKind::dephasing, 0.01, ChannelTarget::both},
      {ChannelKind::amplitude_damping, 0.01, ChannelTarget::coin},
      {ChannelKind::bit_flip, 0.01, ChannelTarget::coin},
  };
  for (const auto& spec : specs) {
    Schedule s;
    s.total_steps = 500;
    s.theta = kPi / 4;
    s.channel = spec;
    double last_purity = 1.0 + 1e-12;
    const DensityOperator out = evolve_open(DensityOperator::from_pure(psi), s, [&](int t, const DensityOperator& rho) {
      if (t % 50 == 0) {
        EXPECT_GE(rho.min_eigenvalue(), -1e-8);
      }
      if (spec.kind != ChannelKind::amplitude_damping) {
        EXPECT_LE(rho.purity(), last_purity + 1e-12);
        last_purity = rho.purity();
      }
    });
    EXPECT_NEAR(out.trace(), 1.0, 1e-10);
    EXPECT_LE(out.hermiticity_error(), 1e-10);
  }
}

// At eta = 0.01 and 100 steps the amplitude-damped distribution is lopsided
// while the unital channels keep the two peaks balanced.
TEST(EvolveOpen, AmplitudeDampingIsAsymmetric) {
  const Lattice lat(2 * 100 + 60);
  const PureState psi = gaussian_position_state(lat, 4.0, 0, 0.0, CoinState::normalized(1.0, Complex(0, 1)));
  auto run = [&](ChannelSpec spec) {
    Schedule s;
    s.total_steps = 100;
    s.theta = kPi / 4;
    s.channel = spec;
    return cat_metrics(position_distribution(evolve_open(DensityOperator::from_pure(psi), s)), lat);
  };
  const CatMetrics ad = run({ChannelKind::amplitude_damping, 0.01, ChannelTarget::coin});
  const CatMetrics bf = run({ChannelKind::bit_flip, 0.01, ChannelTarget::coin});
  EXPECT_LT(ad.mass_balance, 0.95);
  EXPECT_GT(bf.mass_balance, 0.999);
  EXPECT_GT(bf.residual, 1e-6);
}

}  // namespace
}  // namespace catwalk
