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

#include "chanhard/tensor.hpp"

#include <cmath>

#include "chanhard/stats.hpp"

namespace chanhard {

namespace {

void check_subset(const ChannelTensor &tensor, std::span<const std::size_t> subset)
{
    if (subset.empty())
        throw ConfigError("antenna subset is empty");
    std::vector<bool> seen(tensor.n_ant, false);
    for (std::size_t m : subset) {
        if (m >= tensor.n_ant)
            throw ConfigError("antenna index " + std::to_string(m) + " out of range (M=" +
                              std::to_string(tensor.n_ant) + ")");
        if (seen[m])
            throw ConfigError("antenna subset contains duplicate index " + std::to_string(m));
        seen[m] = true;
    }
}

} // namespace

bool ChannelTensor::has_lost_samples() const
{
    for (std::uint8_t b : lost_mask)
        if (b)
            return true;
    return false;
}

void ChannelTensor::validate(bool check_finite) const
{
    if (n_time == 0 || n_freq == 0 || n_ant == 0)
        throw DataError("tensor dimensions must all be >= 1");
    if (data.size() != coeff_count())
        throw DataError("tensor data length " + std::to_string(data.size()) +
                        " does not match N*F*M = " + std::to_string(coeff_count()));
    if (!lost_mask.empty() && lost_mask.size() != n_time)
        throw DataError("lost_mask length does not match N");
    if (layout.size() != n_ant)
        throw DataError("layout antenna count does not match M");
    layout.validate();
    if (check_finite)
        for (const auto &h : data)
            if (!std::isfinite(h.real()) || !std::isfinite(h.imag()))
                throw DataError("tensor contains non-finite coefficients");
}

double mean_power(const ChannelTensor &tensor, std::span<const std::size_t> subset)
{
    check_subset(tensor, subset);
    const std::size_t nf = tensor.n_time * tensor.n_freq;
    KahanSum sum;
    for (std::size_t t = 0; t < nf; ++t) {
        const std::complex<double> *row = tensor.data.data() + t * tensor.n_ant;
        for (std::size_t m : subset)
            sum.add(std::norm(row[m]));
    }
    return sum.value() / (static_cast<double>(nf) * static_cast<double>(subset.size()));
}

ChannelTensor normalize(const ChannelTensor &tensor, std::span<const std::size_t> subset)
{
    if (tensor.has_lost_samples())
        throw ConfigError("normalize: tensor has unhandled lost samples; "
                          "interpolate or drop them first");

    const double mp = mean_power(tensor, subset); // validates the subset
    if (mp <= 0.0)
        throw DataError("normalize: zero-power tensor, normalization divisor is zero");
    const double scale = 1.0 / std::sqrt(mp);

    ChannelTensor out;
    out.n_time = tensor.n_time;
    out.n_freq = tensor.n_freq;
    out.n_ant = subset.size();
    out.carrier_freq_hz = tensor.carrier_freq_hz;
    out.bandwidth_hz = tensor.bandwidth_hz;
    out.rep_rate_hz = tensor.rep_rate_hz;
    out.ue_orientation = tensor.ue_orientation;
    out.lost_mask = tensor.lost_mask;

    out.layout.kind = tensor.layout.kind;
    out.layout.antennas.reserve(subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        AntennaElement el = tensor.layout.antennas[subset[i]];
        el.index = i;
        out.layout.antennas.push_back(el);
    }

    const std::size_t nf = tensor.n_time * tensor.n_freq;
    out.data.resize(nf * subset.size());
    for (std::size_t t = 0; t < nf; ++t) {
        const std::complex<double> *src = tensor.data.data() + t * tensor.n_ant;
        std::complex<double> *dst = out.data.data() + t * subset.size();
        for (std::size_t i = 0; i < subset.size(); ++i)
            dst[i] = src[subset[i]] * scale;
    }
    return out;
}

namespace {

// Per-(n,f) power sums over the subset divided by k, plus their mean.
GainSeries subset_gain_raw(const ChannelTensor &tensor, std::span<const std::size_t> subset,
                           double &mean_out)
{
    check_subset(tensor, subset);

    GainSeries g;
    g.n_time = tensor.n_time;
    g.n_freq = tensor.n_freq;
    g.values.resize(tensor.n_time * tensor.n_freq);

    const double inv_k = 1.0 / static_cast<double>(subset.size());
    KahanSum total;
    for (std::size_t t = 0; t < g.values.size(); ++t) {
        const std::complex<double> *row = tensor.data.data() + t * tensor.n_ant;
        KahanSum p;
        for (std::size_t m : subset)
            p.add(std::norm(row[m]));
        g.values[t] = p.value() * inv_k;
        total.add(g.values[t]);
    }
    mean_out = total.value() / static_cast<double>(g.values.size());
    return g;
}

} // namespace

GainSeries combined_gain(const ChannelTensor &tensor, std::span<const std::size_t> subset)
{
    double mu = 0.0;
    GainSeries g = subset_gain_raw(tensor, subset, mu);
    // Normalization over the same subset forces the mean gain to one; a
    // different subset (or a raw tensor) shows up as a mean offset.
    if (std::abs(mu - 1.0) > 1e-9)
        throw DataError("combined_gain: tensor is not normalized over the given subset "
                        "(mean gain = " + std::to_string(mu) + ")");
    return g;
}

GainSeries combined_gain(const ChannelTensor &tensor)
{
    std::vector<std::size_t> all(tensor.n_ant);
    for (std::size_t m = 0; m < all.size(); ++m)
        all[m] = m;
    return combined_gain(tensor, all);
}

GainSeries normalized_combined_gain(const ChannelTensor &tensor,
                                    std::span<const std::size_t> subset)
{
    if (tensor.has_lost_samples())
        throw ConfigError("normalized_combined_gain: tensor has unhandled lost samples");

    double mu = 0.0;
    GainSeries g = subset_gain_raw(tensor, subset, mu);
    if (mu <= 0.0)
        throw DataError("normalized_combined_gain: zero-power tensor");
    const double inv_mu = 1.0 / mu;
    for (double &v : g.values)
        v *= inv_mu;
    return g;
}

void scan_subset_gains(const ChannelTensor &tensor, const SubsetPolicy &policy,
                       const std::function<void(std::size_t size,
                                                std::span<const double> gain)> &fn)
{
    if (tensor.has_lost_samples())
        throw ConfigError("scan_subset_gains: tensor has unhandled lost samples");
    const auto order = subset_order(tensor.layout, policy);
    policy.validate(order.size());

    const std::size_t nf = tensor.n_time * tensor.n_freq;
    std::vector<double> power(nf, 0.0);
    std::vector<double> gain(nf);

    std::size_t used = 0;
    for (std::size_t size : policy.sizes) {
        while (used < size) {
            const std::size_t m = order[used];
            for (std::size_t t = 0; t < nf; ++t)
                power[t] += std::norm(tensor.data[t * tensor.n_ant + m]);
            ++used;
        }
        KahanSum total;
        for (double p : power)
            total.add(p);
        const double mu = total.value() / static_cast<double>(nf);
        if (mu <= 0.0)
            throw DataError("scan_subset_gains: zero-power tensor");
        const double inv = 1.0 / mu;
        for (std::size_t t = 0; t < nf; ++t)
            gain[t] = power[t] * inv;
        fn(size, gain);
    }
}

} // namespace chanhard
