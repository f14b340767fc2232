// SPDX-License-Identifier: Apache-2.0
//
// chanhard - massive MIMO channel hardening and reliability analysis toolkit
// Copyright (C) 2026 chanhard developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef CHANHARD_SYNTH_HPP
#define CHANHARD_SYNTH_HPP

#include <cstdint>
#include <optional>

#include "chanhard/tensor.hpp"

namespace chanhard {

enum class ChannelModel { Iid, Correlated, Rician };

// Small-scale correlation controls for the Correlated model. Spatial
// correlation follows the exponential model R_ij = spatial_rho^|i-j| over
// the antenna index; time follows an order-1 autoregression; frequency
// correlation is induced by n_delay_taps equal-power delay taps.
struct CorrelatedParams {
    double spatial_rho = 0.0;  // [0, 1)
    double temporal_rho = 0.0; // [0, 1) per sample lag
    std::size_t n_delay_taps = 1;
};

// Large-scale overlay in dB: linear trend over time, a smoothed Gaussian
// shadowing process, and fixed per-antenna offsets (0 for co-located
// panels, > 0 to emulate a distributed deployment).
struct TrendProfile {
    double slope_db_per_sample = 0.0;
    double intercept_db = 0.0;
    double shadow_sigma_db = 0.0;
    std::size_t shadow_coherence = 1; // samples, >= 1
    double per_antenna_offset_sigma_db = 0.0;

    void validate() const;
};

struct SynthConfig {
    std::size_t n_time = 0;
    std::size_t n_freq = 0;
    std::size_t n_ant = 0;

    ChannelModel model = ChannelModel::Iid;
    CorrelatedParams correlated;
    double rician_k_factor = 0.0; // linear, >= 0

    std::optional<TrendProfile> large_scale;

    std::uint64_t seed = 1;

    double carrier_freq_hz = 3.7e9;
    double bandwidth_hz = 20e6;
    double rep_rate_hz = 100.0;
    ArrayKind array_kind = ArrayKind::CoLocated;
    UeOrientation ue_orientation = UeOrientation::Vertical;

    void validate() const;
};

// Generators are pure functions of config + seed: identical configs give
// bit-identical tensors. Independent streams are derived per component.
ChannelTensor gen_iid(const SynthConfig &cfg);
ChannelTensor gen_correlated(const SynthConfig &cfg);
ChannelTensor gen_rician(const SynthConfig &cfg);

// Model dispatch plus the optional large-scale overlay.
ChannelTensor generate(const SynthConfig &cfg);

// Multiplies the small-scale tensor so that the frequency-averaged,
// antenna-summed gain in dB follows slope*n + intercept plus the shadowing
// process, with per-antenna offsets applied inside the antenna sum.
ChannelTensor apply_large_scale(const ChannelTensor &tensor, const TrendProfile &profile,
                                std::uint64_t seed);

// Burst-length distribution of lost-sample events (lengths 1..4).
struct BurstDist {
    double p1 = 0.60;
    double p2 = 0.30;
    double p3 = 0.07;
    double p4 = 0.03;

    void validate() const;
    double mean_length() const { return p1 + 2.0 * p2 + 3.0 * p3 + 4.0 * p4; }
};

struct LostInjection {
    ChannelTensor tensor;                 // attenuated copy, mask NOT set
    std::vector<std::uint8_t> truth_mask; // one flag per time sample
};

// Attenuates bursts of time samples by depth_db across all (f, m) so that
// the expected fraction of flagged time indices equals `rate`. Lost samples
// are attenuations, not deletions, mirroring how they appear in recorded
// gain traces.
LostInjection inject_lost_samples(const ChannelTensor &tensor, double rate, double depth_db,
                                  const BurstDist &burst, std::uint64_t seed);

} // namespace chanhard

#endif
