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
#include <string>
#include <string_view>

namespace catwalk {

enum class ChannelKind { dephasing, amplitude_damping, bit_flip };

/// Subsystem whose off-diagonal elements a dephasing channel shrinks.
enum class ChannelTarget { coin, walker, both };

/// Per-step bath: strength eta gives a per-step decay factor exp(-eta).
struct ChannelSpec {
  ChannelKind kind = ChannelKind::dephasing;
  double eta = 0.0;
  ChannelTarget target = ChannelTarget::coin;

  /// Throws std::invalid_argument if eta < 0 or a Kraus kind targets
  /// anything other than the coin.
  void validate() const;
};

std::string_view to_string(ChannelKind kind);
std::string_view to_string(ChannelTarget target);
std::optional<ChannelKind> parse_channel_kind(std::string_view text);
std::optional<ChannelTarget> parse_channel_target(std::string_view text);

}  // namespace catwalk
