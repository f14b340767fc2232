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

#ifndef CHANHARD_LAYOUT_HPP
#define CHANHARD_LAYOUT_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "chanhard/types.hpp"

namespace chanhard {

struct AntennaElement {
    std::size_t index = 0;
    std::array<double, 3> position_m{0.0, 0.0, 0.0};
    std::array<double, 3> orientation{0.0, 0.0, 1.0}; // unit vector
    Polarization polarization = Polarization::Vertical;
};

// Antenna roster of the base station array. Indices are 0..M-1 and unique.
struct ArrayLayout {
    ArrayKind kind = ArrayKind::CoLocated;
    std::vector<AntennaElement> antennas;

    std::size_t size() const { return antennas.size(); }

    // Planar panel of `rows` x `cols` elements at half-wavelength spacing.
    // One polarization per element, alternating between two consecutive
    // elements along each row; row starts alternate as well so that a
    // 4x25 panel carries exactly 50 V and 50 H elements.
    static ArrayLayout co_located(std::size_t rows, std::size_t cols, double carrier_freq_hz);

    // Default panel: 4 rows x 25 columns.
    static ArrayLayout co_located_default(std::size_t n_antennas, double carrier_freq_hz);

    // Random placements and orientations inside a box, random polarization.
    static ArrayLayout distributed(std::size_t n_antennas, double carrier_freq_hz,
                                   std::uint64_t seed);

    void validate() const; // throws ConfigError on duplicate/missing indices
};

// Antenna subsets for hardening/tail curves. A policy defines a fixed
// ordering of the eligible antennas; the size-k subset is the first k of
// that order, which makes the subsets along a curve nested.
struct SubsetPolicy {
    enum class Mode { FirstK, RandomK, PolarizationOnly };

    Mode mode = Mode::FirstK;
    std::uint64_t seed = 0;                             // RandomK only
    Polarization polarization = Polarization::Vertical; // PolarizationOnly only
    std::vector<std::size_t> sizes = default_sizes();

    static std::vector<std::size_t> default_sizes() { return {1, 2, 4, 8, 16, 32, 64, 100}; }

    void validate(std::size_t available) const; // sizes ascending, feasible
};

// Full eligible-antenna ordering under the policy. FirstK: 0..M-1.
// RandomK: seeded shuffle of 0..M-1. PolarizationOnly: matching antennas
// in index order.
std::vector<std::size_t> subset_order(const ArrayLayout &layout, const SubsetPolicy &policy);

// First k antennas of the policy order.
std::vector<std::size_t> select_subset(const ArrayLayout &layout, const SubsetPolicy &policy,
                                       std::size_t k);

// Number of antennas eligible under the policy.
std::size_t eligible_count(const ArrayLayout &layout, const SubsetPolicy &policy);

} // namespace chanhard

#endif
