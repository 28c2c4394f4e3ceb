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

#include "fourier.hpp"

#include <cmath>
#include <mutex>

#include <fftw3.h>

namespace catwalk::detail {
namespace {

// The FFTW planner is not re-entrant; execution of a finished plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Centred grids turn exp(i k_j x_n) into exp(2 pi i j n / N) times the
// alternating sign (-1)^(j + n + N/2), applied before and after the FFT.
void centred_transform(std::span<Complex> values, int direction) {
  const int n = static_cast<int>(values.size());
  const double half_sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  for (int i = 1; i < n; i += 2) values[i] = -values[i];

  auto* data = reinterpret_cast<fftw_complex*>(values.data());
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_1d(n, data, data, direction, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  const double scale = half_sign / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    values[i] *= (i % 2 == 0) ? scale : -scale;
  }
}

}  // namespace

void position_to_momentum(std::span<Complex> values) { centred_transform(values, FFTW_BACKWARD); }

void momentum_to_position(std::span<Complex> values) { centred_transform(values, FFTW_FORWARD); }

std::vector<double> power_spectrum(std::span<const double> values) {
  const int n = static_cast<int>(values.size());
  std::vector<double> in(values.begin(), values.end());
  std::vector<Complex> out(n / 2 + 1);
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(n, in.data(), reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  std::vector<double> power(out.size());
  for (std::size_t m = 0; m < out.size(); ++m) power[m] = std::norm(out[m]);
  return power;
}

}  // namespace catwalk::detail
