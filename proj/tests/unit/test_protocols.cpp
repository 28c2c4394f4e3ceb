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

#include "catwalk/lattice.hpp"
#include "catwalk/protocols.hpp"
#include "catwalk/spectral.hpp"
#include "catwalk/walk.hpp"
#include "test_util.hpp"

namespace catwalk {
namespace {

PureState packet(const Lattice& lat, double sigma, double theta = kPi / 4) {
  return gaussian_position_state(lat, sigma, 0, 0.0, symmetric_coin_state(theta, kPi / 2));
}

// The sigma_y sandwich reverses the walk only approximately; the defect
// shrinks as the packet narrows in momentum.
TEST(Revival, NoiselessSmall) {
  const Lattice lat(160);
  const int T = 21;
  double last = 0.0;
  for (double sigma : {3.0, 6.0, 9.0}) {
    const RevivalResult res = revival_protocol(packet(lat, sigma), kPi / 4, T);
    ASSERT_EQ(res.fidelity_trace.size(), static_cast<std::size_t>(2 * T + 1));
    EXPECT_GT(res.r, last);
    EXPECT_LT(res.r, 1.0 - 1e-4);
    last = res.r;
    EXPECT_EQ(res.peak_step, 2 * T);
    EXPECT_NEAR(res.fidelity_trace.front(), 1.0, 1e-14);
    EXPECT_NEAR(res.fidelity_trace.back(), res.r, 1e-14);
    for (int t = 1; t <= 2 * T; t += 2) EXPECT_LE(res.fidelity_trace[t], 1e-12) << "step " << t;
  }
  EXPECT_GT(last, 0.99);
}

TEST(Revival, ZeroLengthIsIdentity) {
  const Lattice lat(32);
  const RevivalResult res = revival_protocol(packet(lat, 2.0), 0.3, 0);
  EXPECT_NEAR(res.r, 1.0, 1e-14);
  EXPECT_THROW(revival_protocol(packet(lat, 2.0), 0.3, -1), std::invalid_argument);
}

TEST(Revival, OpenAtZeroStrengthMatchesPure) {
  const Lattice lat(48);
  const PureState psi = packet(lat, 2.0);
  const RevivalResult pure = revival_protocol(psi, kPi / 4, 10);
  for (const ChannelSpec& spec : {ChannelSpec{ChannelKind::dephasing, 0.0, ChannelTarget::both},
                                  ChannelSpec{ChannelKind::amplitude_damping, 0.0, ChannelTarget::coin}}) {
    const RevivalResult open = revival_protocol(psi, kPi / 4, 10, spec);
    EXPECT_NEAR(open.r, pure.r, 1e-10);
    ASSERT_EQ(open.fidelity_trace.size(), pure.fidelity_trace.size());
    for (std::size_t t = 0; t < pure.fidelity_trace.size(); ++t)
      EXPECT_NEAR(open.fidelity_trace[t], pure.fidelity_trace[t], 1e-10);
  }
}

TEST(Revival, NoiseLowersFidelity) {
  const Lattice lat(64);
  const PureState psi = packet(lat, 2.0);
  double last = 1.0 + 1e-12;
  for (double eta : {1e-4, 1e-3, 1e-2, 1e-1}) {
    const double r = revival_protocol(psi, kPi / 4, 12, ChannelSpec{ChannelKind::dephasing, eta, ChannelTarget::walker}).r;
    EXPECT_LT(r, last);
    last = r;
  }
}

TEST(Control, EmptyWindowIsRevival) {
  const Lattice lat(128);
  const PureState psi = packet(lat, 3.0);
  for (int p : {1, 4, 7}) {
    const ControlResult c = control_protocol(psi, kPi / 4, 20, p, 0);
    EXPECT_NEAR(c.r, revival_protocol(psi, kPi / 4, 20).r, 1e-14);
    EXPECT_FALSE(c.hold_fidelity.has_value());
  }
}

TEST(Control, HoldPeriod) {
  const Lattice lat(64);
  const PureState psi = packet(lat, 2.0);
  EXPECT_EQ(control_protocol(psi, kPi / 4, 2, 4, 1).hold_period, 4);
  EXPECT_EQ(control_protocol(psi, kPi / 4, 2, 5, 1).hold_period, 10);
  // One window of 2p steps covers the odd-p period exactly.
  EXPECT_TRUE(control_protocol(psi, kPi / 4, 2, 5, 1).hold_fidelity.has_value());
}

TEST(Control, HoldIsExactWhenTheCoinIsDiagonalFree) {
  // At theta = pi/2 the coin is sigma_x and F_m restores the window state
  // after p steps (even p) or 2p steps (odd p).
  const Lattice lat(24);
  std::mt19937_64 rng(61);
  const PureState psi = testing::random_state(lat, rng);
  for (int p : {2, 3, 4, 5, 6}) {
    const ControlResult c = control_protocol(psi, kPi / 2, 3, p, 1);
    ASSERT_TRUE(c.hold_fidelity.has_value());
    EXPECT_NEAR(*c.hold_fidelity, 1.0, 1e-9) << "p=" << p;
  }
}

TEST(Control, HoldIsApproximateAtQuarterPi) {
  const Lattice lat(24);
  std::mt19937_64 rng(62);
  const PureState psi = testing::random_state(lat, rng);
  const ControlResult c = control_protocol(psi, kPi / 4, 0, 4, 1);
  ASSERT_TRUE(c.hold_fidelity.has_value());
  EXPECT_LT(*c.hold_fidelity, 1.0 - 1e-6);
}

TEST(Control, RejectsBadArguments) {
  const Lattice lat(32);
  const PureState psi = packet(lat, 2.0);
  EXPECT_THROW(control_protocol(psi, kPi / 4, 5, 0, 1), std::invalid_argument);
  EXPECT_THROW(control_protocol(psi, kPi / 4, 5, 2, -1), std::invalid_argument);
  EXPECT_THROW(control_protocol(psi, kPi / 4, -1, 2, 1), std::invalid_argument);
}

TEST(Control, MatchesManualSchedule) {
  const Lattice lat(64);
  const PureState psi = packet(lat, 2.0);
  const int t = 6;
  const int p = 3;
  const int n = 2;
  PureState s = psi;
  for (int i = 0; i < t; ++i) s = step(s, kPi / 4);
  for (int i = 0; i < 2 * n * p; ++i) s = step_generalized(s, kPi / 4, 2 * kPi / p);
  s = apply_coin(s, pauli_y());
  for (int i = 0; i < t; ++i) s = step(s, kPi / 4);
  s = apply_coin(s, pauli_y());
  EXPECT_NEAR(control_protocol(psi, kPi / 4, t, p, n).r, fidelity(psi, s), 1e-12);
}

}  // namespace
}  // namespace catwalk
