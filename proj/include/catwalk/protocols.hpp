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

#include <optional>
#include <vector>

#include "catwalk/channel_spec.hpp"
#include "catwalk/lattice.hpp"

namespace catwalk {

struct RevivalResult {
  /// Fidelity of the final state (after the second sigma_y) with the start.
  double r = 0.0;
  /// Entry t for t = 0 ... 2T. Up to T this is the overlap with the initial
  /// state; afterwards the state is first reflected by sigma_y, so entry 2T
  /// equals r.
  std::vector<double> fidelity_trace;
  /// Argmax of the trace over steps 1 ... 2T (step 0 is trivially 1).
  int peak_step = 0;
};

/// Evolve T steps, apply sigma_y, evolve T steps, apply sigma_y. With a
/// channel the evolution is open and runs on the density operator.
/// No lattice-size precondition is enforced.
RevivalResult revival_protocol(const PureState& initial, double theta, int T,
                               const std::optional<ChannelSpec>& channel = std::nullopt);

struct ControlResult {
  double r = 0.0;
  /// Steps after which the generalized walk should restore the state at the
  /// start of the hold: p for even p, 2p for odd p.
  int hold_period = 0;
  /// Fidelity between the states at the window start and one hold period
  /// later; absent when the window is shorter than the period.
  std::optional<double> hold_fidelity;
};

/// t steps of Z, 2np steps with F_m at phi = 2 pi / p, sigma_y, t steps of Z,
/// sigma_y; r is the fidelity with the initial state. Requires p >= 1 and
/// n >= 0.
ControlResult control_protocol(const PureState& initial, double theta, int t, int p, int n);

}  // namespace catwalk
