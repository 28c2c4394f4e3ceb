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

#include "catwalk/protocols.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "catwalk/noise.hpp"
#include "catwalk/walk.hpp"

namespace catwalk {
namespace {

Schedule reversal_schedule(double theta, int T) {
  Schedule s;
  s.total_steps = 2 * T;
  s.theta = theta;
  s.coin_gates = {{T, pauli_y()}, {2 * T, pauli_y()}};
  return s;
}

int argmax_after_start(const std::vector<double>& trace) {
  if (trace.size() < 2) return 0;
  return static_cast<int>(std::max_element(trace.begin() + 1, trace.end()) - trace.begin());
}

}  // namespace

RevivalResult revival_protocol(const PureState& initial, double theta, int T,
                               const std::optional<ChannelSpec>& channel) {
  if (T < 0) throw std::invalid_argument("T must be >= 0");
  Schedule schedule = reversal_schedule(theta, T);
  schedule.channel = channel;
  const PureState reflected = apply_coin(initial, pauli_y());

  RevivalResult result;
  result.fidelity_trace.resize(2 * T + 1);
  if (channel) {
    auto observer = [&](int t, const DensityOperator& rho) {
      result.fidelity_trace[t] = fidelity_with_density(t <= T ? initial : reflected, rho);
    };
    const DensityOperator final_rho = evolve_open(DensityOperator::from_pure(initial), schedule, observer);
    result.r = fidelity_with_density(initial, final_rho);
  } else {
    auto observer = [&](int t, const PureState& psi) {
      result.fidelity_trace[t] = fidelity(t <= T ? initial : reflected, psi);
    };
    const PureState final_state = evolve(initial, schedule, observer);
    result.r = fidelity(initial, final_state);
  }
  result.peak_step = argmax_after_start(result.fidelity_trace);
  return result;
}

ControlResult control_protocol(const PureState& initial, double theta, int t, int p, int n) {
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  if (p < 1) throw std::invalid_argument("p must be >= 1, got " + std::to_string(p));
  if (n < 0) throw std::invalid_argument("n must be >= 0, got " + std::to_string(n));

  const int hold = 2 * n * p;
  Schedule schedule;
  schedule.total_steps = 2 * t + hold;
  schedule.theta = theta;
  if (hold > 0) schedule.fm_windows = {{t, t + hold, 2.0 * kPi / p}};
  schedule.coin_gates = {{t + hold, pauli_y()}, {schedule.total_steps, pauli_y()}};

  ControlResult result;
  result.hold_period = (p % 2 == 0) ? p : 2 * p;
  const int check_at = t + result.hold_period;
  std::optional<PureState> window_start;
  auto observer = [&](int step, const PureState& psi) {
    if (step == t && hold > 0) window_start = psi;
    if (window_start && step == check_at && result.hold_period <= hold) {
      result.hold_fidelity = fidelity(*window_start, psi);
    }
  };
  const PureState final_state = evolve(initial, schedule, observer);
  result.r = fidelity(initial, final_state);
  return result;
}

}  // namespace catwalk
