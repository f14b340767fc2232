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

#ifndef CHANHARD_PREPROCESS_HPP
#define CHANHARD_PREPROCESS_HPP

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "chanhard/tensor.hpp"

namespace chanhard {

// Frequency-averaged, antenna-summed gain in dB per time sample:
// g(n) = 10*log10( (1/F) * sum_f sum_m |h(n,f,m)|^2 ), on raw coefficients.
std::vector<double> aggregate_gain_db(const ChannelTensor &tensor);

// Flags time samples whose aggregate gain drops more than threshold_db
// below the median of the surrounding window. Already-flagged indices are
// excluded from the median, iterating to a fixed point, so a burst does not
// drag its own reference level down. `window` must be odd and >= 3.
std::vector<std::uint8_t> detect_lost_samples(const ChannelTensor &tensor,
                                              double threshold_db = 15.0,
                                              std::size_t window = 21);

// Replaces masked coefficients by linear interpolation between the nearest
// unmasked time neighbours, independently per (f, m) and independently for
// real and imaginary parts. Masked runs touching a boundary are filled with
// the nearest unmasked value.
ChannelTensor interpolate_lost(const ChannelTensor &tensor,
                               std::span<const std::uint8_t> mask);

// Removes masked time samples entirely; N shrinks accordingly.
ChannelTensor drop_lost(const ChannelTensor &tensor, std::span<const std::uint8_t> mask);

// Normalized time autocorrelation magnitudes for every (f, m), lags
// 1..max_lag. Complex correlation about zero by default; `envelope`
// switches to the Pearson correlation of |h|.
struct Autocorrelation {
    std::size_t n_freq = 0;
    std::size_t n_ant = 0;
    std::size_t max_lag = 0;
    bool envelope = false;

    // magnitude(f, m, lag), lag in 1..max_lag
    std::vector<double> magnitudes;

    // Smallest lag with magnitude < 0.5 per (f, m); max_lag + 1 when the
    // correlation never falls below 0.5 within the computed range.
    std::vector<std::size_t> first_lag_below_half;

    // max over (f, m) of first_lag_below_half
    std::size_t summary_lag = 0;

    double magnitude(std::size_t f, std::size_t m, std::size_t lag) const
    {
        return magnitudes[(f * n_ant + m) * max_lag + (lag - 1)];
    }
};

Autocorrelation time_autocorrelation(const ChannelTensor &tensor, std::size_t max_lag,
                                     bool envelope = false);

// Single-series normalized autocorrelation magnitude at one lag. Lag 0 is
// exactly 1 for any series that is not identically zero.
double autocorrelation_magnitude(std::span<const std::complex<double>> series,
                                 std::size_t lag, bool envelope = false);

// Maximum UE speed satisfying the Nyquist criterion for the sampling rate:
// v_max = c * rep_rate / (2 * carrier_freq).
double max_ue_speed_mps(double rep_rate_hz, double carrier_freq_hz);

struct QcOptions {
    double threshold_db = 15.0;
    std::size_t window = 21;
    std::size_t max_lag = 20;
    bool envelope_autocorr = false;
    double assumed_ue_speed_mps = 0.0; // 0 = unknown, Nyquist check passes vacuously
};

struct QcReport {
    std::vector<std::size_t> lost_indices;             // ascending
    std::map<std::size_t, std::size_t> burst_histogram; // run length -> count
    Autocorrelation autocorr;
    double max_ue_speed_mps = 0.0;
    bool nyquist_ok = true;
};

std::map<std::size_t, std::size_t> burst_histogram(std::span<const std::uint8_t> mask);

QcReport run_qc(const ChannelTensor &tensor, const QcOptions &options);

} // namespace chanhard

#endif
