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
#include "catwalk/walk.hpp"
#include "test_util.hpp"

namespace catwalk {
namespace {

using testing::as_vector;
using testing::dense_step;
using testing::max_abs_diff;
using testing::random_density;
using testing::random_state;

const double kS = 1.0 / std::sqrt(2.0);

TEST(CoinOperator, KnownAngles) {
  Matrix2 z;
  z << 1, 0, 0, -1;
  EXPECT_LT((coin_operator(0.0).matrix() - z).cwiseAbs().maxCoeff(), 1e-15);
  Matrix2 x;
  x << 0, 1, 1, 0;
  EXPECT_LT((coin_operator(kPi / 2).matrix() - x).cwiseAbs().maxCoeff(), 1e-15);
  Matrix2 h;
  h << kS, kS, kS, -kS;
  EXPECT_LT((coin_operator(kPi / 4).matrix() - h).cwiseAbs().maxCoeff(), 1e-15);
  for (double t : {0.1, 1.0, 2.5, 5.9}) {
    const Matrix2 c = coin_operator(t).matrix();
    EXPECT_LT((c * c.adjoint() - Matrix2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((c - c.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(CoinMatrix, RejectsNonUnitary) {
  Matrix2 m;
  m << 1, 1, 0, 1;
  EXPECT_THROW(CoinMatrix{m}, std::invalid_argument);
  EXPECT_NO_THROW(pauli_y());
}

TEST(ApplyCoin, IdentityAndSigmaYSquared) {
  std::mt19937_64 rng(5);
  const Lattice lat(10);
  const PureState psi = random_state(lat, rng);
  EXPECT_NEAR(fidelity(apply_coin(psi, CoinMatrix::identity()), psi), 1.0, 1e-14);
  const PureState twice = apply_coin(apply_coin(psi, pauli_y()), pauli_y());
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    EXPECT_NEAR(std::abs(twice.amplitudes()[i] - psi.amplitudes()[i]), 0.0, 1e-15);
  }
}

TEST(ApplyCoin, HadamardOnUp) {
  const Lattice lat(8);
  const PureState out = apply_coin(localized_state(lat, 0, CoinState::spin_up()), coin_operator(kPi / 4));
  EXPECT_NEAR(std::abs(out.at_site(0, Coin::up) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.at_site(0, Coin::down) - kS), 0.0, 1e-15);
}

TEST(ApplyShift, MovesCoinLevelsApart) {
  const Lattice lat(8);
  EXPECT_EQ(apply_shift(localized_state(lat, 0, CoinState::spin_up())).at_site(1, Coin::up), Complex(1.0));
  EXPECT_EQ(apply_shift(localized_state(lat, 0, CoinState::spin_down())).at_site(-1, Coin::down), Complex(1.0));
  EXPECT_EQ(apply_shift(localized_state(lat, 3, CoinState::spin_up())).at_site(-4, Coin::up), Complex(1.0));
  EXPECT_EQ(apply_shift(localized_state(lat, -4, CoinState::spin_down())).at_site(3, Coin::down), Complex(1.0));
}

TEST(ApplyFm, SiteDependentPhase) {
  std::mt19937_64 rng(6);
  const Lattice lat(12);
  const PureState psi = random_state(lat, rng);
  EXPECT_NEAR(fidelity(apply_fm(psi, 0.0), psi), 1.0, 1e-14);
  EXPECT_NEAR(std::abs(apply_fm(localized_state(lat, 1, CoinState::spin_up()), kPi).at_site(1, Coin::up) + 1.0), 0.0,
              1e-15);
  const PureState thrice = apply_fm(apply_fm(apply_fm(psi, 2 * kPi / 3), 2 * kPi / 3), 2 * kPi / 3);
  for (std::size_t i = 0; i < psi.dimension(); ++i) {
    EXPECT_NEAR(std::abs(thrice.amplitudes()[i] - psi.amplitudes()[i]), 0.0, 1e-13);
  }
}

TEST(Step, HadamardFromOrigin) {
  const Lattice lat(8);
  const PureState out = step(localized_state(lat, 0, CoinState::spin_up()), kPi / 4);
  EXPECT_NEAR(std::abs(out.at_site(1, Coin::up) - kS), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.at_site(-1, Coin::down) - kS), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(Step, BallisticAtZeroAngle) {
  const Lattice lat(10);
  for (int x = lat.min_site(); x < lat.max_site(); ++x) {
    EXPECT_EQ(step(localized_state(lat, x, CoinState::spin_up()), 0.0).at_site(x + 1, Coin::up), Complex(1.0));
  }
}

TEST(Step, MatchesDenseOperator) {
  std::mt19937_64 rng(7);
  for (int n : {4, 10, 24}) {
    const Lattice lat(n);
    for (double theta : {0.0, 0.3, kPi / 4, 2.0}) {
      const PureState psi = random_state(lat, rng);
      const Eigen::VectorXcd expect = dense_step(lat, theta) * as_vector(psi);
      EXPECT_LT((as_vector(step(psi, theta)) - expect).cwiseAbs().maxCoeff(), 1e-14);
      const Eigen::VectorXcd expect_g = dense_step(lat, theta, 0.7) * as_vector(psi);
      EXPECT_LT((as_vector(step_generalized(psi, theta, 0.7)) - expect_g).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Step, HalfPiTwiceIsIdentity) {
  const Lattice lat(12);
  for (int i = 0; i < 2 * lat.size(); ++i) {
    std::vector<Complex> amp(2 * lat.size());
    amp[i] = 1.0;
    const PureState e(lat, amp);
    const PureState back = step(step(e, kPi / 2), kPi / 2);
    for (std::size_t j = 0; j < e.dimension(); ++j) {
      EXPECT_NEAR(std::abs(back.amplitudes()[j] - e.amplitudes()[j]), 0.0, 1e-12);
    }
  }
}

TEST(Schedule, Validation) {
  Schedule s;
  s.total_steps = 10;
  EXPECT_NO_THROW(s.validate());
  s.fm_windows = {{0, 5, 1.0}, {5, 10, 2.0}};
  EXPECT_NO_THROW(s.validate());
  s.fm_windows = {{0, 6, 1.0}, {5, 10, 2.0}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.fm_windows = {{3, 11, 1.0}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.fm_windows = {{3, 3, 1.0}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.fm_windows.clear();
  s.coin_gates = {{11, pauli_y()}};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.coin_gates = {{10, pauli_y()}};
  EXPECT_NO_THROW(s.validate());
  s.total_steps = -1;
  s.coin_gates.clear();
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(Evolve, ComposesStepsGatesAndWindows) {
  std::mt19937_64 rng(8);
  const Lattice lat(16);
  const PureState psi = random_state(lat, rng);
  Schedule s;
  s.total_steps = 6;
  s.theta = 0.4;
  s.fm_windows = {{2, 4, 0.9}};
  s.coin_gates = {{1, pauli_y()}, {6, coin_operator(1.1)}};

  PureState manual = step(psi, 0.4);
  manual = apply_coin(manual, pauli_y());
  manual = step(manual, 0.4);
  manual = step_generalized(manual, 0.4, 0.9);
  manual = step_generalized(manual, 0.4, 0.9);
  manual = step(manual, 0.4);
  manual = step(manual, 0.4);
  manual = apply_coin(manual, coin_operator(1.1));

  int calls = 0;
  const PureState out = evolve(psi, s, [&](int t, const PureState&) { EXPECT_EQ(t, calls++); });
  EXPECT_EQ(calls, 7);
  EXPECT_NEAR(fidelity(out, manual), 1.0, 1e-12);
  EXPECT_LT((as_vector(out) - as_vector(manual)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Evolve, SnapshotsAndNorm) {
  const Lattice lat(64);
  Schedule s;
  s.total_steps = 20;
  s.theta = kPi / 4;
  const auto traj = evolve_with_snapshots(gaussian_position_state(lat, 2.0, 0, 0.0, CoinState::spin_up()), s, {0, 7, 20});
  ASSERT_EQ(traj.snapshots.size(), 3u);
  EXPECT_EQ(traj.snapshots[1].first, 7);
  EXPECT_NEAR(traj.final_state.norm(), 1.0, 1e-12);
  EXPECT_NEAR(fidelity(traj.snapshots[2].second, traj.final_state), 1.0, 1e-14);
  EXPECT_THROW(evolve_with_snapshots(traj.final_state, s, {21}), std::invalid_argument);
  EXPECT_THROW(evolve(to_momentum(traj.final_state), s), std::invalid_argument);
}

TEST(Evolve, DelocalizedStartSplitsIntoTwoPeaks) {
  const Lattice lat(512);
  Schedule s;
  s.total_steps = 150;
  s.theta = kPi / 4;
  const PureState out = evolve(gaussian_position_state(lat, 10.0, 0, 0.0, CoinState(kS, Complex(0, kS))), s);
  const CatMetrics m = cat_metrics(position_distribution(out), lat);
  EXPECT_FALSE(m.unimodal);
  EXPECT_NEAR(m.right_peak, 150 * std::cos(kPi / 4), 3.0);
  EXPECT_NEAR(m.left_peak, -150 * std::cos(kPi / 4), 3.0);
}

// A sigma_y inserted at T and at 2T does not undo the walk exactly:
// sigma_y Z sigma_y = -S^{-1} C while Z^{-1} = C S^{-1}.
TEST(Evolve, SigmaYSandwichIsCloseButNotExact) {
  const Lattice lat(512);
  Schedule s;
  s.total_steps = 194;
  s.theta = kPi / 4;
  s.coin_gates = {{97, pauli_y()}, {194, pauli_y()}};
  const PureState psi = gaussian_position_state(lat, 10.0, 0, 0.0, CoinState(kS, Complex(0, kS)));
  const double f = fidelity(psi, evolve(psi, s));
  EXPECT_GT(f, 0.99);
  EXPECT_LT(f, 1.0 - 1e-3);

  Matrix2 lhs = pauli_y().matrix() * coin_operator(kPi / 4).matrix() * pauli_y().matrix();
  EXPECT_LT((lhs + coin_operator(kPi / 4).matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Evolve, ParityAlternates) {
  const Lattice lat(128);
  const PureState psi = localized_state(lat, 0, CoinState(kS, Complex(0, kS)));
  Schedule s;
  s.total_steps = 30;
  s.theta = 0.6;
  evolve(psi, s, [&](int t, const PureState& cur) {
    const auto p = position_distribution(cur);
    for (int i = 0; i < lat.size(); ++i) {
      if (((lat.site_at(i) % 2) + 2) % 2 != t % 2) {
        EXPECT_EQ(p[i], 0.0);
      }
    }
    if (t % 2 == 1) {
      EXPECT_LE(fidelity(psi, cur), 1e-30);
    }
  });
}

// F_m holds: F Z maps the k-sector by k -> k + phi, and Z(k + pi) Z(k) =
// -Z(k)^2, which is proportional to the identity only at theta = pi/2.
TEST(FmRecurrence, ExactAtHalfPiApproximateElsewhere) {
  const Lattice lat(24);
  std::mt19937_64 rng(9);
  for (int p : {2, 3, 4, 5, 6}) {
    const int period = (p % 2 == 0) ? p : 2 * p;
    const PureState psi = random_state(lat, rng);
    Schedule s;
    s.total_steps = period;
    s.theta = kPi / 2;
    s.fm_windows = {{0, period, 2 * kPi / p}};
    EXPECT_NEAR(fidelity(psi, evolve(psi, s)), 1.0, 1e-12) << p;
  }
  const PureState psi = gaussian_position_state(lat, 1.0, 0, 0.0, CoinState(kS, Complex(0, kS)));
  Schedule s;
  s.total_steps = 2;
  s.theta = kPi / 4;
  s.fm_windows = {{0, 2, kPi}};
  EXPECT_LT(fidelity(psi, evolve(psi, s)), 1.0 - 1e-3);
}

TEST(StepDensity, MatchesPureEvolutionAndDenseProduct) {
  std::mt19937_64 rng(10);
  const Lattice lat(12);
  const PureState psi = random_state(lat, rng);
  const DensityOperator rho = step_density(DensityOperator::from_pure(psi), 0.9);
  const DensityOperator expect = DensityOperator::from_pure(step(psi, 0.9));
  EXPECT_LT(max_abs_diff(rho.matrix(), expect.matrix()), 1e-12);

  const DensityOperator mixed = random_density(lat, rng);
  const Eigen::MatrixXcd z = dense_step(lat, 0.9, 1.3);
  const Eigen::MatrixXcd dense = z * mixed.matrix() * z.adjoint();
  EXPECT_LT(max_abs_diff(step_density_generalized(mixed, 0.9, 1.3).matrix(), dense), 1e-13);

  const Eigen::MatrixXcd u = testing::dense_coin(lat, pauli_y().matrix());
  EXPECT_LT(max_abs_diff(apply_coin_density(mixed, pauli_y()).matrix(), u * mixed.matrix() * u.adjoint()), 1e-14);
}

TEST(StepDensity, TraceInvariantAndMaximallyMixedFixed) {
  std::mt19937_64 rng(13);
  const Lattice lat(16);
  DensityOperator rho = random_density(lat, rng);
  for (int i = 0; i < 100; ++i) rho = step_density(rho, kPi / 4);
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  EXPECT_LE(rho.hermiticity_error(), 1e-12);

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(32, 32) / 32.0;
  EXPECT_LT(max_abs_diff(step_density(DensityOperator(lat, id), 0.7).matrix(), id), 1e-15);
}

}  // namespace
}  // namespace catwalk
