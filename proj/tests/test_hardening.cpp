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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "chanhard/hardening.hpp"
#include "chanhard/synth.hpp"
#include "support/test_support.hpp"

using namespace chanhard;

namespace {

ChannelTensor iid_tensor(std::size_t n, std::size_t f, std::size_t m, std::uint64_t seed)
{
    SynthConfig cfg;
    cfg.n_time = n;
    cfg.n_freq = f;
    cfg.n_ant = m;
    cfg.seed = seed;
    return gen_iid(cfg);
}

std::vector<std::size_t> all_antennas(std::size_t m)
{
    std::vector<std::size_t> subset(m);
    std::iota(subset.begin(), subset.end(), 0);
    return subset;
}

} // namespace

TEST_CASE("constant combined gain has zero spread")
{
    ChannelTensor t = iid_tensor(20, 5, 3, 50);
    for (auto &h : t.data)
        h = {1.0, 0.0};
    const auto subset = all_antennas(3);
    CHECK(gain_std(normalize(t, subset), subset) == 0.0);
}

TEST_CASE("single-branch gain spread matches the exponential distribution")
{
    const ChannelTensor t = iid_tensor(10000, 100, 1, 51); // 1e6 samples
    const auto subset = all_antennas(1);
    CHECK(gain_std(normalize(t, subset), subset) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("hundred-branch gain spread reaches -10 dB")
{
    const ChannelTensor t = iid_tensor(500, 100, 100, 52);
    const auto subset = all_antennas(100);
    const double s = gain_std(normalize(t, subset), subset);
    CHECK(s == doctest::Approx(0.1).epsilon(0.02));
}

TEST_CASE("gain_std needs at least two samples")
{
    ChannelTensor t = iid_tensor(1, 1, 2, 53);
    for (auto &h : t.data)
        h = {1.0, 0.0};
    const auto subset = all_antennas(2);
    CHECK_THROWS_AS(gain_std(normalize(t, subset), subset), ConfigError);
}

TEST_CASE("iid hardening curve follows -5*log10(M)")
{
    const ChannelTensor t = iid_tensor(600, 100, 100, 54); // 6e4 samples per size
    SubsetPolicy policy;
    policy.sizes.clear();
    for (std::size_t m = 1; m <= 100; ++m)
        policy.sizes.push_back(m);

    const HardeningCurve curve = hardening_curve(t, policy);
    REQUIRE(curve.points.size() == 100);
    for (const auto &p : curve.points) {
        const double expect = -5.0 * std::log10(static_cast<double>(p.subset_size));
        CHECK(std::fabs(p.std_db - expect) < 0.2);
    }
    CHECK(curve.hardening_amount_db == doctest::Approx(10.0).epsilon(0.03));

    // Monotone hardening within sampling tolerance.
    for (std::size_t i = 1; i < curve.points.size(); ++i)
        CHECK(curve.points[i].std_db < curve.points[i - 1].std_db + 0.1);

    // Limit check on the hardening ratio.
    CHECK(curve.points.back().std_linear < curve.points.front().std_linear / 5.0);
}

TEST_CASE("correlation never helps hardening")
{
    SubsetPolicy policy;
    policy.sizes = {1, 100};
    const double iid_db = iid_reference_curve(policy.sizes).points.back().std_db;

    for (double rho : {0.3, 0.6, 0.9}) {
        SynthConfig cfg;
        cfg.n_time = 1500;
        cfg.n_freq = 32;
        cfg.n_ant = 100;
        cfg.model = ChannelModel::Correlated;
        cfg.correlated.spatial_rho = rho;
        cfg.correlated.n_delay_taps = 16;
        cfg.seed = 5500 + static_cast<std::uint64_t>(rho * 100.0);
        const HardeningCurve curve = hardening_curve(gen_correlated(cfg), policy);
        CHECK(curve.points.back().std_db >= iid_db - 0.1);
    }
}

TEST_CASE("hardening curve is scale invariant")
{
    const ChannelTensor t = iid_tensor(300, 20, 16, 56);
    SubsetPolicy policy;
    policy.sizes = {1, 4, 16};

    ChannelTensor scaled = t;
    for (auto &h : scaled.data)
        h *= 0.007;

    const HardeningCurve a = hardening_curve(t, policy);
    const HardeningCurve b = hardening_curve(scaled, policy);
    for (std::size_t i = 0; i < a.points.size(); ++i)
        CHECK(a.points[i].std_db == doctest::Approx(b.points[i].std_db).epsilon(1e-9));
}

TEST_CASE("analytic reference curve")
{
    const std::vector<std::size_t> sizes{1, 4, 100};
    const HardeningCurve curve = iid_reference_curve(sizes);
    CHECK(curve.points[0].std_db == doctest::Approx(0.0));
    CHECK(curve.points[1].std_db == doctest::Approx(-3.0102999566).epsilon(1e-9));
    CHECK(curve.points[2].std_db == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(curve.hardening_amount_db == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("per-antenna means: identical antennas have zero spread")
{
    ChannelTensor t = iid_tensor(50, 4, 8, 57);
    for (auto &h : t.data)
        h = {1.0, 0.0};
    const PerAntennaStats stats = per_antenna_mean_stats(t);
    CHECK(stats.cross_antenna_std_db == doctest::Approx(0.0));
    for (double v : stats.mean_gain_db)
        CHECK(v == doctest::Approx(0.0));
}

TEST_CASE("per-antenna means: iid spread is pure sampling noise")
{
    const ChannelTensor raw = iid_tensor(500, 40, 50, 58); // 2e4 samples per antenna
    const ChannelTensor t = normalize(raw, all_antennas(50));
    const PerAntennaStats stats = per_antenna_mean_stats(t);
    CHECK(stats.cross_antenna_std_db < 0.05);
}

TEST_CASE("per-antenna means require a normalized tensor and M >= 2")
{
    const ChannelTensor raw = iid_tensor(100, 10, 4, 59);
    CHECK_THROWS_AS(per_antenna_mean_stats(raw), DataError);

    const ChannelTensor single = iid_tensor(100, 10, 1, 60);
    CHECK_THROWS_AS(per_antenna_mean_stats(single), ConfigError);
}

TEST_CASE("per-antenna offset sigma is recovered through the stats")
{
    SynthConfig cfg;
    cfg.n_time = 300;
    cfg.n_freq = 64;
    cfg.n_ant = 100;
    cfg.seed = 61;
    TrendProfile profile;
    profile.per_antenna_offset_sigma_db = 0.25;
    cfg.large_scale = profile;
    cfg.array_kind = ArrayKind::Distributed;

    const ChannelTensor t = generate(cfg);
    const ChannelTensor n = normalize(t, all_antennas(100));
    const PerAntennaStats stats = per_antenna_mean_stats(n);
    CHECK(stats.cross_antenna_std_db == doctest::Approx(0.25).epsilon(0.2));
}
