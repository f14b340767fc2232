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

#ifndef CHANHARD_HARDENING_HPP
#define CHANHARD_HARDENING_HPP

#include <span>
#include <vector>

#include "chanhard/tensor.hpp"

namespace chanhard {

struct HardeningPoint {
    std::size_t subset_size = 0;
    double std_linear = 0.0;
    double std_db = 0.0; // 10*log10(std_linear)
};

// Standard deviation of MRC-combined gain versus antenna-subset size. Each
// point re-normalizes over its own subset so the mean gain is one (0 dB) at
// every size. hardening_amount_db is the first-to-last drop of std_db.
struct HardeningCurve {
    std::vector<HardeningPoint> points;
    SubsetPolicy policy;
    double hardening_amount_db = 0.0;
};

// Population standard deviation of the combined gain over (n, f) around its
// mean. The tensor must be normalized over `subset`, which pins the mean to
// one, so this is the small-scale fading spread around 0 dB.
double gain_std(const ChannelTensor &tensor, std::span<const std::size_t> subset);

HardeningCurve hardening_curve(const ChannelTensor &tensor, const SubsetPolicy &policy);

// Analytic i.i.d. complex Gaussian reference: std_linear = 1/sqrt(M).
HardeningCurve iid_reference_curve(std::span<const std::size_t> sizes);

struct PerAntennaStats {
    std::vector<double> mean_gain_db;  // per antenna, mean of |h|^2 over (n,f) in dB
    double cross_antenna_std_db = 0.0; // spread of those means
};

// Per-antenna mean gain on a tensor normalized over all of its antennas.
PerAntennaStats per_antenna_mean_stats(const ChannelTensor &tensor);

} // namespace chanhard

#endif
