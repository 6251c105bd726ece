// Copyright 2026 The semsec Authors
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

#ifndef SEMSEC_CHANNEL_MODEL_HPP_
#define SEMSEC_CHANNEL_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace semsec {

/// Large-scale geometry and noise floor of the three-node link, plus the
/// seed that fixes every small-scale fading draw.
struct ChannelConfig {
  double d_l = 30.0;         // Tx-Rx distance, meters
  double d_e = 30.0;         // Tx-eavesdropper distance, meters
  double pl0_db = -30.0;     // path loss at 1 m
  double alpha = 4.0;        // path-loss exponent
  double noise_l_dbm = -80.0;
  double noise_e_dbm = -80.0;
  std::uint64_t seed = 20240607;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

/// One fading realization. Gains are already divided by the respective noise
/// power, so SNR = p * g.
struct FadingState {
  double g_l = 0.0;
  double g_e = 0.0;
};

/// Linear power gain PL0 * d^-alpha with PL0 given in dB.
double path_loss_linear(double d, double pl0_db, double alpha);

double dbm_to_watt(double dbm);

/// Mean of g_L and g_E under cfg (path loss over noise power).
FadingState mean_gains(const ChannelConfig& cfg);

/// Draws n i.i.d. Rayleigh states. State i only depends on (cfg.seed, i), so
/// any subrange can be regenerated independently.
std::vector<FadingState> sample_states(const ChannelConfig& cfg, std::size_t n);

}  // namespace semsec

#endif  // SEMSEC_CHANNEL_MODEL_HPP_
