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

#include "chanhard/layout.hpp"

#include <algorithm>
#include <cmath>

#include "chanhard/rng.hpp"

namespace chanhard {

ArrayLayout ArrayLayout::co_located(std::size_t rows, std::size_t cols, double carrier_freq_hz)
{
    if (rows == 0 || cols == 0)
        throw ConfigError("co_located layout: rows and cols must be >= 1");
    if (carrier_freq_hz <= 0.0)
        throw ConfigError("co_located layout: carrier frequency must be positive");

    const double spacing = 0.5 * speed_of_light_mps / carrier_freq_hz; // lambda/2

    ArrayLayout layout;
    layout.kind = ArrayKind::CoLocated;
    layout.antennas.reserve(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            AntennaElement el;
            el.index = r * cols + c;
            el.position_m = {static_cast<double>(c) * spacing, 0.0,
                             static_cast<double>(r) * spacing};
            el.orientation = {0.0, 1.0, 0.0}; // broadside, facing the UE area
            el.polarization =
                ((r + c) % 2 == 0) ? Polarization::Vertical : Polarization::Horizontal;
            layout.antennas.push_back(el);
        }
    return layout;
}

ArrayLayout ArrayLayout::co_located_default(std::size_t n_antennas, double carrier_freq_hz)
{
    if (n_antennas == 100)
        return co_located(4, 25, carrier_freq_hz);
    // Fall back to a single row for non-standard counts.
    return co_located(1, n_antennas, carrier_freq_hz);
}

ArrayLayout ArrayLayout::distributed(std::size_t n_antennas, double carrier_freq_hz,
                                     std::uint64_t seed)
{
    if (n_antennas == 0)
        throw ConfigError("distributed layout: antenna count must be >= 1");
    if (carrier_freq_hz <= 0.0)
        throw ConfigError("distributed layout: carrier frequency must be positive");

    // Placement box roughly matching a corridor segment: 30 m x 10 m x 4 m.
    ArrayLayout layout;
    layout.kind = ArrayKind::Distributed;
    layout.antennas.reserve(n_antennas);
    Rng rng(derive_stream_seed(seed, 0xD157));
    for (std::size_t i = 0; i < n_antennas; ++i) {
        AntennaElement el;
        el.index = i;
        el.position_m = {30.0 * rng.next_halfopen01(), 10.0 * rng.next_halfopen01(),
                         0.5 + 3.5 * rng.next_halfopen01()};
        // Uniform direction on the sphere.
        const double z = 2.0 * rng.next_halfopen01() - 1.0;
        const double phi = 2.0 * 3.14159265358979323846 * rng.next_halfopen01();
        const double rxy = std::sqrt(std::max(0.0, 1.0 - z * z));
        el.orientation = {rxy * std::cos(phi), rxy * std::sin(phi), z};
        el.polarization =
            (rng.next_u64() & 1u) ? Polarization::Horizontal : Polarization::Vertical;
        layout.antennas.push_back(el);
    }
    return layout;
}

void ArrayLayout::validate() const
{
    const std::size_t m = antennas.size();
    if (m == 0)
        throw ConfigError("layout: empty antenna roster");
    std::vector<bool> seen(m, false);
    for (const auto &el : antennas) {
        if (el.index >= m)
            throw ConfigError("layout: antenna index out of range");
        if (seen[el.index])
            throw ConfigError("layout: duplicate antenna index");
        seen[el.index] = true;
    }
}

void SubsetPolicy::validate(std::size_t available) const
{
    if (sizes.empty())
        throw ConfigError("subset policy: empty size list");
    std::size_t prev = 0;
    for (std::size_t s : sizes) {
        if (s == 0)
            throw ConfigError("subset policy: subset size must be >= 1");
        if (s <= prev && prev != 0)
            throw ConfigError("subset policy: sizes must be strictly increasing");
        prev = s;
    }
    if (sizes.back() > available)
        throw ConfigError("subset policy: size " + std::to_string(sizes.back()) +
                          " exceeds " + std::to_string(available) + " eligible antennas");
}

std::vector<std::size_t> subset_order(const ArrayLayout &layout, const SubsetPolicy &policy)
{
    const std::size_t m = layout.size();
    std::vector<std::size_t> order;

    switch (policy.mode) {
    case SubsetPolicy::Mode::FirstK:
        order.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            order[i] = i;
        break;
    case SubsetPolicy::Mode::RandomK: {
        order.resize(m);
        for (std::size_t i = 0; i < m; ++i)
            order[i] = i;
        Rng rng(derive_stream_seed(policy.seed, 0x5e1ec7));
        // Fisher-Yates with our own stream so the shuffle is reproducible.
        for (std::size_t i = m - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng.next_u64() % (i + 1));
            std::swap(order[i], order[j]);
        }
        break;
    }
    case SubsetPolicy::Mode::PolarizationOnly:
        for (const auto &el : layout.antennas)
            if (el.polarization == policy.polarization)
                order.push_back(el.index);
        std::sort(order.begin(), order.end());
        break;
    }
    return order;
}

std::vector<std::size_t> select_subset(const ArrayLayout &layout, const SubsetPolicy &policy,
                                       std::size_t k)
{
    auto order = subset_order(layout, policy);
    if (k == 0)
        throw ConfigError("select_subset: k must be >= 1");
    if (k > order.size())
        throw ConfigError("select_subset: k=" + std::to_string(k) + " exceeds " +
                          std::to_string(order.size()) + " eligible antennas");
    order.resize(k);
    return order;
}

std::size_t eligible_count(const ArrayLayout &layout, const SubsetPolicy &policy)
{
    return subset_order(layout, policy).size();
}

} // namespace chanhard
