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

#include <span>
#include <vector>

#include "catwalk/lattice.hpp"

namespace catwalk::detail {

/// In-place unitary transform of one walker component, position -> momentum,
/// with psi(k) = N^{-1/2} sum_x exp(ikx) psi(x) on the centred grids.
void position_to_momentum(std::span<Complex> values);
void momentum_to_position(std::span<Complex> values);

/// |sum_j f_j exp(-2 pi i m j / n)|^2 for m = 0 ... n/2.
std::vector<double> power_spectrum(std::span<const double> values);

}  // namespace catwalk::detail
