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

#include "chanhard/preprocess.hpp"
#include "chanhard/shadowing.hpp"
#include "chanhard/stats.hpp"
#include "chanhard/synth.hpp"
#include "chanhard/tail_model.hpp"
#include "support/test_support.hpp"

using namespace chanhard;

namespace {

std::vector<double> gains_of(const ChannelTensor &t)
{
    std::vector<double> g(t.data.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        g[i] = std::norm(t.data[i]);
    return g;
}

} // namespace

TEST_CASE("iid generation is deterministic per seed")
{
    SynthConfig cfg;
    cfg.n_time = 50;
    cfg.n_freq = 10;
    cfg.n_ant = 8;
    cfg.seed = 1234;
    const ChannelTensor a = gen_iid(cfg);
    const ChannelTensor b = gen_iid(cfg);
    CHECK(a.data == b.data);

    cfg.seed = 1235;
    const ChannelTensor c = gen_iid(cfg);
    CHECK(a.data != c.data);
}

TEST_CASE("iid marginals: unit mean power, unit gain variance, Exp(1) gains")
{
    SynthConfig cfg;
    cfg.n_time = 100;
    cfg.n_freq = 100;
    cfg.n_ant = 100;
    cfg.seed = 77;
    const ChannelTensor t = gen_iid(cfg); // 1e6 coefficients

    const auto g = gains_of(t);
    const double mu = test::sample_mean(g);
    CHECK(mu > 0.995);
    CHECK(mu < 1.005);
    CHECK(test::sample_var(g) == doctest::Approx(1.0).epsilon(0.02));
    CHECK(test::ks_distance(g, test::exp1_cdf) < 0.005);
}

TEST_CASE("zero dims are rejected")
{
    SynthConfig cfg;
    cfg.n_time = 0;
    cfg.n_freq = 4;
    cfg.n_ant = 4;
    CHECK_THROWS_AS(gen_iid(cfg), ConfigError);
}

TEST_CASE("correlated generator with all parameters at zero is i.i.d.-like")
{
    SynthConfig cfg;
    cfg.n_time = 1000;
    cfg.n_freq = 10;
    cfg.n_ant = 100;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 0.0;
    cfg.correlated.n_delay_taps = 10;
    cfg.seed = 5150;
    const ChannelTensor t = gen_correlated(cfg); // 1e6 coefficients

    CHECK(test::ks_distance(gains_of(t), test::exp1_cdf) < 0.005);

    // Empirical inter-antenna correlation magnitude stays at noise level.
    const std::size_t nf = t.n_time * t.n_freq;
    std::complex<double> cross{0.0, 0.0};
    double pow_a = 0.0, pow_b = 0.0;
    for (std::size_t s = 0; s < nf; ++s)
        for (std::size_t m = 0; m + 1 < t.n_ant; m += 2) {
            const auto ha = t.data[s * t.n_ant + m];
            const auto hb = t.data[s * t.n_ant + m + 1];
            cross += std::conj(ha) * hb;
            pow_a += std::norm(ha);
            pow_b += std::norm(hb);
        }
    CHECK(std::abs(cross) / std::sqrt(pow_a * pow_b) < 0.01);
}

TEST_CASE("temporal AR(1) shows up in the autocorrelation at rho^lag")
{
    SynthConfig cfg;
    cfg.n_time = 6000;
    cfg.n_freq = 4;
    cfg.n_ant = 4;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.temporal_rho = 0.6;
    cfg.seed = 4242;
    const ChannelTensor t = gen_correlated(cfg);

    const Autocorrelation ac = time_autocorrelation(t, 3);
    double lag1 = 0.0, lag2 = 0.0;
    for (std::size_t f = 0; f < t.n_freq; ++f)
        for (std::size_t m = 0; m < t.n_ant; ++m) {
            lag1 += ac.magnitude(f, m, 1);
            lag2 += ac.magnitude(f, m, 2);
        }
    lag1 /= 16.0;
    lag2 /= 16.0;
    CHECK(lag1 == doctest::Approx(0.6).epsilon(0.05));
    CHECK(lag2 == doctest::Approx(0.36).epsilon(0.06));
}

TEST_CASE("marginals survive the full correlation stack")
{
    SynthConfig cfg;
    cfg.n_time = 2500;
    cfg.n_freq = 20;
    cfg.n_ant = 20;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 0.5;
    cfg.correlated.temporal_rho = 0.3;
    cfg.correlated.n_delay_taps = 4;
    cfg.seed = 31337;
    const ChannelTensor t = gen_correlated(cfg); // 1e6 coefficients
    CHECK(test::ks_distance(gains_of(t), test::exp1_cdf) < 0.005);
}

TEST_CASE("spatial correlation reduces the effective DoF below M")
{
    SynthConfig cfg;
    cfg.n_time = 2000;
    cfg.n_freq = 32;
    cfg.n_ant = 100;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 0.9;
    cfg.correlated.n_delay_taps = 16;
    cfg.seed = 999;
    const ChannelTensor t = gen_correlated(cfg);

    std::vector<std::size_t> all(100);
    std::iota(all.begin(), all.end(), 0);
    const GainSeries g = normalized_combined_gain(t, all);
    const GammaFit fit = fit_gamma(g.values, FitMethod::MoM);

    // Covariance-spread oracle: DoF = M^2 / sum_ij rho^(2|i-j|), which is
    // M^2 over the squared Frobenius norm of the correlation matrix.
    const double r = 0.9 * 0.9;
    double frob = 100.0;
    for (std::size_t d = 1; d < 100; ++d)
        frob += 2.0 * (100.0 - static_cast<double>(d)) * std::pow(r, d);
    const double dof_oracle = 100.0 * 100.0 / frob;

    CHECK(fit.shape < 100.0);
    CHECK(fit.shape == doctest::Approx(dof_oracle).epsilon(0.10));
}

TEST_CASE("correlated parameter validation")
{
    SynthConfig cfg;
    cfg.n_time = 10;
    cfg.n_freq = 4;
    cfg.n_ant = 4;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 1.0;
    CHECK_THROWS_AS(gen_correlated(cfg), ConfigError);
    cfg.correlated.spatial_rho = 0.5;
    cfg.correlated.n_delay_taps = 5; // > F
    CHECK_THROWS_AS(gen_correlated(cfg), ConfigError);
}

TEST_CASE("Rician moments follow the K-factor")
{
    SynthConfig cfg;
    cfg.n_time = 500;
    cfg.n_freq = 40;
    cfg.n_ant = 10;
    cfg.model = ChannelModel::Rician;
    cfg.rician_k_factor = 5.0;
    cfg.seed = 808;
    const ChannelTensor t = gen_rician(cfg);

    const auto g = gains_of(t);
    const double k = 5.0;
    CHECK(test::sample_mean(g) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(test::sample_var(g) ==
          doctest::Approx((1.0 + 2.0 * k) / ((1.0 + k) * (1.0 + k))).epsilon(0.03));

    // K = 0 degenerates to the Rayleigh case: Exp(1) gains.
    cfg.n_time = 2500;
    cfg.rician_k_factor = 0.0;
    const ChannelTensor r0 = gen_rician(cfg); // 1e6 coefficients
    CHECK(test::ks_distance(gains_of(r0), test::exp1_cdf) < 0.005);
}

TEST_CASE("large-scale overlay pins the aggregate level")
{
    SynthConfig cfg;
    cfg.n_time = 400;
    cfg.n_freq = 100;
    cfg.n_ant = 100;
    cfg.seed = 2024;
    const ChannelTensor base = gen_iid(cfg);

    TrendProfile profile;
    profile.intercept_db = 22.3;
    const ChannelTensor t = apply_large_scale(base, profile, cfg.seed);

    const std::vector<double> g = aggregate_gain_db(t);
    CHECK(mean(g) == doctest::Approx(22.3).epsilon(0.01));
    CHECK(stddev(g, 1) < 0.1); // small-scale residual only
}

TEST_CASE("trend and shadowing parameters are recovered at survey scale")
{
    SynthConfig cfg;
    cfg.n_time = 6000;
    cfg.n_freq = 20;
    cfg.n_ant = 20;
    cfg.seed = 60601;
    const ChannelTensor base = gen_iid(cfg);

    TrendProfile profile;
    profile.slope_db_per_sample = -0.0012;
    profile.intercept_db = 22.26;
    profile.shadow_sigma_db = 2.41;
    profile.shadow_coherence = 1;
    const ChannelTensor t = apply_large_scale(base, profile, cfg.seed);

    const ShadowingFit fit = analyze_shadowing(t);
    CHECK(fit.slope_k == doctest::Approx(-0.0012).epsilon(0.10));
    CHECK(fit.intercept_m == doctest::Approx(22.26).epsilon(0.01));
    CHECK(fit.sigma_hat == doctest::Approx(2.41).epsilon(0.10));
}

TEST_CASE("shadow coherence controls the autocorrelation of the overlay")
{
    SynthConfig cfg;
    cfg.n_time = 4000;
    cfg.n_freq = 50;
    cfg.n_ant = 50;
    cfg.seed = 424242;
    const ChannelTensor base = gen_iid(cfg);

    TrendProfile profile;
    profile.intercept_db = 10.0;
    profile.shadow_sigma_db = 3.0;
    profile.shadow_coherence = 50;
    const ChannelTensor t = apply_large_scale(base, profile, cfg.seed);

    // Marginal sigma stays at the requested value and neighbouring samples
    // are strongly correlated (a moving average of length 50 has lag-1
    // correlation 49/50).
    const std::vector<double> g = aggregate_gain_db(t);
    const double mu = mean(g);
    CHECK(stddev(g, 1) == doctest::Approx(3.0).epsilon(0.15));
    double num = 0.0, den = 0.0;
    for (std::size_t n = 0; n + 1 < g.size(); ++n) {
        num += (g[n] - mu) * (g[n + 1] - mu);
        den += (g[n] - mu) * (g[n] - mu);
    }
    CHECK(num / den > 0.9);
}

TEST_CASE("per-antenna offsets control the cross-antenna spread")
{
    SynthConfig cfg;
    cfg.n_time = 200;
    cfg.n_freq = 100;
    cfg.n_ant = 100;
    cfg.seed = 515;
    const ChannelTensor base = gen_iid(cfg);

    TrendProfile flat;
    flat.intercept_db = 5.0;
    const ChannelTensor no_offset = apply_large_scale(base, flat, cfg.seed);

    TrendProfile spread = flat;
    spread.per_antenna_offset_sigma_db = 0.25;
    const ChannelTensor with_offset = apply_large_scale(base, spread, cfg.seed);

    auto cross_antenna_std = [](const ChannelTensor &t) {
        std::vector<double> mean_db(t.n_ant, 0.0);
        const std::size_t nf = t.n_time * t.n_freq;
        for (std::size_t m = 0; m < t.n_ant; ++m) {
            KahanSum s;
            for (std::size_t i = 0; i < nf; ++i)
                s.add(std::norm(t.data[i * t.n_ant + m]));
            mean_db[m] = db_from_linear(s.value() / static_cast<double>(nf));
        }
        return stddev(mean_db, 1);
    };

    CHECK(cross_antenna_std(no_offset) < 0.05);
    CHECK(cross_antenna_std(with_offset) == doctest::Approx(0.25).epsilon(0.2));
}

TEST_CASE("generate dispatch is deterministic including the overlay")
{
    SynthConfig cfg;
    cfg.n_time = 100;
    cfg.n_freq = 10;
    cfg.n_ant = 10;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 0.4;
    cfg.correlated.temporal_rho = 0.2;
    cfg.correlated.n_delay_taps = 3;
    cfg.seed = 1001;
    TrendProfile profile;
    profile.intercept_db = 12.0;
    profile.shadow_sigma_db = 1.5;
    profile.shadow_coherence = 5;
    profile.per_antenna_offset_sigma_db = 0.2;
    cfg.large_scale = profile;

    const ChannelTensor a = generate(cfg);
    const ChannelTensor b = generate(cfg);
    CHECK(a.data == b.data);
}

TEST_CASE("lost-sample injection: identity at rate zero")
{
    SynthConfig cfg;
    cfg.n_time = 100;
    cfg.n_freq = 5;
    cfg.n_ant = 4;
    cfg.seed = 2;
    const ChannelTensor t = gen_iid(cfg);
    const LostInjection inj = inject_lost_samples(t, 0.0, 25.0, BurstDist{}, 7);
    CHECK(inj.tensor.data == t.data);
    for (auto b : inj.truth_mask)
        CHECK(b == 0);
}

TEST_CASE("lost-sample injection: expected count and exact attenuation")
{
    SynthConfig cfg;
    cfg.n_time = 6000;
    cfg.n_freq = 5;
    cfg.n_ant = 4;
    cfg.seed = 3;
    const ChannelTensor t = gen_iid(cfg);
    const LostInjection inj = inject_lost_samples(t, 0.01, 25.0, BurstDist{}, 11);

    std::size_t flagged = 0;
    for (auto b : inj.truth_mask)
        flagged += b;
    // ~60 expected; allow a generous binomial spread.
    CHECK(flagged > 30);
    CHECK(flagged < 100);

    const double atten = std::pow(10.0, -25.0 / 20.0);
    const std::size_t row = t.n_freq * t.n_ant;
    for (std::size_t n = 0; n < t.n_time; ++n)
        for (std::size_t i = 0; i < row; ++i) {
            const auto expect =
                inj.truth_mask[n] ? t.data[n * row + i] * atten : t.data[n * row + i];
            CHECK(inj.tensor.data[n * row + i] == expect);
        }
}

TEST_CASE("lost-sample injection: burst lengths follow the distribution")
{
    SynthConfig cfg;
    cfg.n_time = 60000;
    cfg.n_freq = 1;
    cfg.n_ant = 1;
    cfg.seed = 4;
    const ChannelTensor t = gen_iid(cfg);
    const LostInjection inj = inject_lost_samples(t, 0.01, 25.0, BurstDist{}, 13);

    const auto hist = burst_histogram(inj.truth_mask);
    double total = 0.0;
    for (const auto &[len, count] : hist)
        total += static_cast<double>(count);
    // p1 = 0.6 dominates; merged bursts can exceed length 4 but stay rare.
    CHECK(static_cast<double>(hist.at(1)) / total == doctest::Approx(0.6).epsilon(0.15));
    double longer_than_4 = 0.0;
    for (const auto &[len, count] : hist)
        if (len > 4)
            longer_than_4 += static_cast<double>(count);
    CHECK(longer_than_4 / total < 0.05);
}

TEST_CASE("lost-sample injection validates its parameters")
{
    SynthConfig cfg;
    cfg.n_time = 100;
    cfg.n_freq = 2;
    cfg.n_ant = 2;
    cfg.seed = 5;
    const ChannelTensor t = gen_iid(cfg);
    CHECK_THROWS_AS(inject_lost_samples(t, 0.2, 25.0, BurstDist{}, 1), ConfigError);
    CHECK_THROWS_AS(inject_lost_samples(t, 0.01, 5.0, BurstDist{}, 1), ConfigError);
    BurstDist bad;
    bad.p1 = 0.9;
    CHECK_THROWS_AS(inject_lost_samples(t, 0.01, 25.0, bad, 1), ConfigError);
}
