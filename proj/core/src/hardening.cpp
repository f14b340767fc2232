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

#include "chanhard/hardening.hpp"

#include <cmath>

#include "chanhard/stats.hpp"

namespace chanhard {

namespace {

// Population std around the sample mean, matching the 1/(N F) form of the
// evaluation; the sample mean is one by normalization.
double population_std(std::span<const double> xs)
{
    if (xs.size() < 2)
        throw ConfigError("gain std: need at least 2 (n,f) samples");
    return stddev(xs, 0);
}

} // namespace

double gain_std(const ChannelTensor &tensor, std::span<const std::size_t> subset)
{
    const GainSeries g = combined_gain(tensor, subset); // checks normalization
    return population_std(g.values);
}

HardeningCurve hardening_curve(const ChannelTensor &tensor, const SubsetPolicy &policy)
{
    HardeningCurve curve;
    curve.policy = policy;
    curve.points.reserve(policy.sizes.size());

    scan_subset_gains(tensor, policy, [&](std::size_t size, std::span<const double> gain) {
        HardeningPoint p;
        p.subset_size = size;
        p.std_linear = population_std(gain);
        p.std_db = db_from_linear(p.std_linear);
        curve.points.push_back(p);
    });

    curve.hardening_amount_db = curve.points.front().std_db - curve.points.back().std_db;
    return curve;
}

HardeningCurve iid_reference_curve(std::span<const std::size_t> sizes)
{
    if (sizes.empty())
        throw ConfigError("iid_reference_curve: empty size list");

    HardeningCurve curve;
    curve.policy.sizes.assign(sizes.begin(), sizes.end());
    curve.points.reserve(sizes.size());
    for (std::size_t m : sizes) {
        if (m < 1)
            throw ConfigError("iid_reference_curve: sizes must be >= 1");
        HardeningPoint p;
        p.subset_size = m;
        p.std_linear = 1.0 / std::sqrt(static_cast<double>(m));
        p.std_db = db_from_linear(p.std_linear); // = -5*log10(M)
        curve.points.push_back(p);
    }
    curve.hardening_amount_db = curve.points.front().std_db - curve.points.back().std_db;
    return curve;
}

PerAntennaStats per_antenna_mean_stats(const ChannelTensor &tensor)
{
    tensor.validate();
    if (tensor.n_ant < 2)
        throw ConfigError("per_antenna_mean_stats: need at least 2 antennas");

    const std::size_t nf = tensor.n_time * tensor.n_freq;
    std::vector<KahanSum> sums(tensor.n_ant);
    for (std::size_t t = 0; t < nf; ++t) {
        const std::complex<double> *row = tensor.data.data() + t * tensor.n_ant;
        for (std::size_t m = 0; m < tensor.n_ant; ++m)
            sums[m].add(std::norm(row[m]));
    }

    double overall = 0.0;
    PerAntennaStats stats;
    stats.mean_gain_db.resize(tensor.n_ant);
    for (std::size_t m = 0; m < tensor.n_ant; ++m) {
        const double mean_lin = sums[m].value() / static_cast<double>(nf);
        if (mean_lin <= 0.0)
            throw DataError("per_antenna_mean_stats: antenna with zero mean gain");
        overall += mean_lin;
        stats.mean_gain_db[m] = db_from_linear(mean_lin);
    }
    overall /= static_cast<double>(tensor.n_ant);
    if (std::abs(overall - 1.0) > 1e-9)
        throw DataError("per_antenna_mean_stats: tensor is not normalized over all antennas "
                        "(mean gain = " + std::to_string(overall) + ")");

    stats.cross_antenna_std_db = stddev(stats.mean_gain_db, 1);
    return stats;
}

} // namespace chanhard
