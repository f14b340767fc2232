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

#ifndef CHANHARD_TENSOR_HPP
#define CHANHARD_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "chanhard/layout.hpp"
#include "chanhard/types.hpp"

namespace chanhard {

// Complex channel coefficients indexed (time n, frequency f, antenna m),
// stored n-major, then f, then m. Immutable by convention after
// construction: all operations return new tensors.
struct ChannelTensor {
    std::size_t n_time = 0;
    std::size_t n_freq = 0;
    std::size_t n_ant = 0;

    double carrier_freq_hz = 3.7e9;
    double bandwidth_hz = 20e6;
    double rep_rate_hz = 100.0;

    ArrayLayout layout;
    UeOrientation ue_orientation = UeOrientation::Vertical;

    // Empty when absent, otherwise one flag per time sample (1 = lost).
    std::vector<std::uint8_t> lost_mask;

    std::vector<std::complex<double>> data;

    std::size_t coeff_count() const { return n_time * n_freq * n_ant; }

    std::size_t idx(std::size_t n, std::size_t f, std::size_t m) const
    {
        return (n * n_freq + f) * n_ant + m;
    }

    std::complex<double> &at(std::size_t n, std::size_t f, std::size_t m)
    {
        return data[idx(n, f, m)];
    }

    const std::complex<double> &at(std::size_t n, std::size_t f, std::size_t m) const
    {
        return data[idx(n, f, m)];
    }

    bool has_lost_samples() const;

    // Structural invariants; with check_finite also scans for NaN/Inf.
    void validate(bool check_finite = false) const;
};

// Gain values over the (time, frequency) grid, n-major.
struct GainSeries {
    std::size_t n_time = 0;
    std::size_t n_freq = 0;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double &at(std::size_t n, std::size_t f) { return values[n * n_freq + f]; }
    double at(std::size_t n, std::size_t f) const { return values[n * n_freq + f]; }
};

// Mean of |h|^2 over time, frequency and the given antennas.
double mean_power(const ChannelTensor &tensor, std::span<const std::size_t> subset);

// Returns the tensor restricted to `subset` (antennas re-indexed 0..k-1 in
// subset order) and scaled so that the mean of |h|^2 over the restriction
// equals one. Requires that lost samples have been interpolated or dropped.
ChannelTensor normalize(const ChannelTensor &tensor, std::span<const std::size_t> subset);

// MRC-combined gain G(n,f) = (1/k) * sum over the subset of |h(n,f,m)|^2.
// The tensor must be normalized over the same subset; this is verified via
// the mean-gain-equals-one contract and a DataError is thrown otherwise.
GainSeries combined_gain(const ChannelTensor &tensor, std::span<const std::size_t> subset);

// Combined gain of all antennas of an already-normalized tensor.
GainSeries combined_gain(const ChannelTensor &tensor);

// One-pass equivalent of combined_gain(normalize(tensor, subset)): computes
// the subset power sums and divides by their mean, so no restricted copy of
// the tensor is materialized. Used by the curve computations.
GainSeries normalized_combined_gain(const ChannelTensor &tensor,
                                    std::span<const std::size_t> subset);

// Walks the policy's antenna order once, growing per-(n,f) power sums one
// antenna at a time, and invokes `fn` with the normalized combined gain at
// every size in policy.sizes. Each antenna is visited once regardless of
// how many sizes are requested; the result at size k is identical to
// normalized_combined_gain(tensor, order[:k]).
void scan_subset_gains(const ChannelTensor &tensor, const SubsetPolicy &policy,
                       const std::function<void(std::size_t size,
                                                std::span<const double> gain)> &fn);

} // namespace chanhard

#endif
