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

#include "chanhard/synth.hpp"

#include <cmath>

#include "chanhard/rng.hpp"

namespace chanhard {

namespace {

// Stream tags so each stochastic component of a generation run draws from
// its own substream of the user-facing seed.
enum StreamTag : std::uint64_t {
    kStreamCoeffs = 1,
    kStreamShadowing = 2,
    kStreamAntennaOffsets = 3,
    kStreamLostSamples = 4,
    kStreamLayout = 5,
};

constexpr double kPi = 3.14159265358979323846;

ChannelTensor make_shell(const SynthConfig &cfg)
{
    ChannelTensor t;
    t.n_time = cfg.n_time;
    t.n_freq = cfg.n_freq;
    t.n_ant = cfg.n_ant;
    t.carrier_freq_hz = cfg.carrier_freq_hz;
    t.bandwidth_hz = cfg.bandwidth_hz;
    t.rep_rate_hz = cfg.rep_rate_hz;
    t.ue_orientation = cfg.ue_orientation;
    if (cfg.array_kind == ArrayKind::CoLocated)
        t.layout = ArrayLayout::co_located_default(cfg.n_ant, cfg.carrier_freq_hz);
    else
        t.layout = ArrayLayout::distributed(cfg.n_ant, cfg.carrier_freq_hz,
                                            derive_stream_seed(cfg.seed, kStreamLayout));
    t.data.resize(t.coeff_count());
    return t;
}

} // namespace

void TrendProfile::validate() const
{
    if (shadow_sigma_db < 0.0)
        throw ConfigError("trend profile: shadow_sigma must be >= 0");
    if (shadow_coherence < 1)
        throw ConfigError("trend profile: shadow_coherence must be >= 1");
    if (per_antenna_offset_sigma_db < 0.0)
        throw ConfigError("trend profile: per_antenna_offset_sigma must be >= 0");
    if (!std::isfinite(slope_db_per_sample) || !std::isfinite(intercept_db))
        throw ConfigError("trend profile: non-finite trend parameters");
}

void SynthConfig::validate() const
{
    if (n_time == 0 || n_freq == 0 || n_ant == 0)
        throw ConfigError("synth config: dimensions must all be >= 1");
    if (carrier_freq_hz <= 0.0 || bandwidth_hz <= 0.0 || rep_rate_hz <= 0.0)
        throw ConfigError("synth config: frequencies must be positive");
    if (model == ChannelModel::Correlated) {
        const auto &c = correlated;
        if (!(c.spatial_rho >= 0.0 && c.spatial_rho < 1.0))
            throw ConfigError("synth config: spatial_rho must be in [0, 1)");
        if (!(c.temporal_rho >= 0.0 && c.temporal_rho < 1.0))
            throw ConfigError("synth config: temporal_rho must be in [0, 1)");
        if (c.n_delay_taps < 1 || c.n_delay_taps > n_freq)
            throw ConfigError("synth config: n_delay_taps must be in [1, F]");
    }
    if (model == ChannelModel::Rician && rician_k_factor < 0.0)
        throw ConfigError("synth config: Rician K-factor must be >= 0");
    if (large_scale)
        large_scale->validate();
}

ChannelTensor gen_iid(const SynthConfig &cfg)
{
    cfg.validate();
    ChannelTensor t = make_shell(cfg);
    Rng rng(derive_stream_seed(cfg.seed, kStreamCoeffs));
    for (auto &h : t.data)
        h = rng.next_cn01();
    return t;
}

ChannelTensor gen_correlated(const SynthConfig &cfg)
{
    cfg.validate();
    if (cfg.model != ChannelModel::Correlated)
        throw ConfigError("gen_correlated: config model is not Correlated");

    const std::size_t n_t = cfg.n_time, n_f = cfg.n_freq, m_ant = cfg.n_ant;
    const std::size_t taps = cfg.correlated.n_delay_taps;
    const double rho_t = cfg.correlated.temporal_rho;
    const double rho_s = cfg.correlated.spatial_rho;
    const double innov_t = std::sqrt(1.0 - rho_t * rho_t);
    const double innov_s = std::sqrt(1.0 - rho_s * rho_s);

    ChannelTensor t = make_shell(cfg);
    Rng rng(derive_stream_seed(cfg.seed, kStreamCoeffs));

    // Equal-power tap response per frequency: h(f) = sum_l b_l W^(f l) / sqrt(L).
    std::vector<std::complex<double>> twiddle(n_f * taps);
    const double scale = 1.0 / std::sqrt(static_cast<double>(taps));
    for (std::size_t f = 0; f < n_f; ++f)
        for (std::size_t l = 0; l < taps; ++l) {
            const double phase = -2.0 * kPi * static_cast<double>(f * l) /
                                 static_cast<double>(n_f);
            twiddle[f * taps + l] =
                std::complex<double>(std::cos(phase), std::sin(phase)) * scale;
        }

    // AR(1) state per (tap, antenna); both recursions are initialized at the
    // stationary distribution so marginals are CN(0,1) from the first sample.
    std::vector<std::complex<double>> state(taps * m_ant);
    std::vector<std::complex<double>> spatial(taps * m_ant);

    for (std::size_t n = 0; n < n_t; ++n) {
        for (std::size_t l = 0; l < taps; ++l)
            for (std::size_t m = 0; m < m_ant; ++m) {
                auto &s = state[l * m_ant + m];
                const auto z = rng.next_cn01();
                s = (n == 0) ? z : s * rho_t + z * innov_t;
            }

        for (std::size_t l = 0; l < taps; ++l) {
            const std::complex<double> *a = state.data() + l * m_ant;
            std::complex<double> *b = spatial.data() + l * m_ant;
            b[0] = a[0];
            for (std::size_t m = 1; m < m_ant; ++m)
                b[m] = b[m - 1] * rho_s + a[m] * innov_s;
        }

        for (std::size_t f = 0; f < n_f; ++f) {
            const std::complex<double> *w = twiddle.data() + f * taps;
            std::complex<double> *out = t.data.data() + (n * n_f + f) * m_ant;
            for (std::size_t m = 0; m < m_ant; ++m) {
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t l = 0; l < taps; ++l)
                    acc += spatial[l * m_ant + m] * w[l];
                out[m] = acc;
            }
        }
    }
    return t;
}

ChannelTensor gen_rician(const SynthConfig &cfg)
{
    cfg.validate();
    if (cfg.model != ChannelModel::Rician)
        throw ConfigError("gen_rician: config model is not Rician");

    const double k = cfg.rician_k_factor;
    const double los = std::sqrt(k / (k + 1.0));
    const double scatter = std::sqrt(1.0 / (k + 1.0));

    ChannelTensor t = make_shell(cfg);
    Rng rng(derive_stream_seed(cfg.seed, kStreamCoeffs));
    for (auto &h : t.data)
        h = std::complex<double>(los, 0.0) + rng.next_cn01() * scatter;
    return t;
}

ChannelTensor generate(const SynthConfig &cfg)
{
    ChannelTensor t;
    switch (cfg.model) {
    case ChannelModel::Iid:
        t = gen_iid(cfg);
        break;
    case ChannelModel::Correlated:
        t = gen_correlated(cfg);
        break;
    case ChannelModel::Rician:
        t = gen_rician(cfg);
        break;
    }
    if (cfg.large_scale)
        t = apply_large_scale(t, *cfg.large_scale, cfg.seed);
    return t;
}

ChannelTensor apply_large_scale(const ChannelTensor &tensor, const TrendProfile &profile,
                                std::uint64_t seed)
{
    profile.validate();
    tensor.validate();

    const std::size_t n_t = tensor.n_time, n_f = tensor.n_freq, m_ant = tensor.n_ant;

    // Shadowing: white Gaussian dB noise smoothed by a moving average of
    // length shadow_coherence, rescaled so each sample has the requested
    // standard deviation. The extra leading draws keep every average fully
    // populated, so the marginal sigma is exact at the boundaries too.
    const std::size_t coh = profile.shadow_coherence;
    std::vector<double> shadow(n_t, 0.0);
    if (profile.shadow_sigma_db > 0.0) {
        Rng rng(derive_stream_seed(seed, kStreamShadowing));
        std::vector<double> white(n_t + coh - 1);
        for (auto &w : white)
            w = rng.next_normal();
        const double gain = profile.shadow_sigma_db * std::sqrt(static_cast<double>(coh)) /
                            static_cast<double>(coh);
        double running = 0.0;
        for (std::size_t j = 0; j < coh; ++j)
            running += white[j];
        shadow[0] = running * gain;
        for (std::size_t n = 1; n < n_t; ++n) {
            running += white[n + coh - 1] - white[n - 1];
            shadow[n] = running * gain;
        }
    }

    // Per-antenna offsets enter as power weights inside the antenna sum and
    // are normalized out of the aggregate level.
    std::vector<double> weight(m_ant, 1.0);
    if (profile.per_antenna_offset_sigma_db > 0.0) {
        Rng rng(derive_stream_seed(seed, kStreamAntennaOffsets));
        for (auto &w : weight)
            w = linear_from_db(profile.per_antenna_offset_sigma_db * rng.next_normal());
    }
    double weight_sum = 0.0;
    for (double w : weight)
        weight_sum += w;

    ChannelTensor out = tensor;
    std::vector<double> amp(m_ant);
    for (std::size_t n = 0; n < n_t; ++n) {
        const double level_db =
            profile.slope_db_per_sample * static_cast<double>(n) + profile.intercept_db +
            shadow[n];
        const double level_lin = linear_from_db(level_db);
        for (std::size_t m = 0; m < m_ant; ++m)
            amp[m] = std::sqrt(level_lin * weight[m] / weight_sum);
        for (std::size_t f = 0; f < n_f; ++f) {
            std::complex<double> *row = out.data.data() + (n * n_f + f) * m_ant;
            for (std::size_t m = 0; m < m_ant; ++m)
                row[m] *= amp[m];
        }
    }
    return out;
}

void BurstDist::validate() const
{
    if (p1 < 0.0 || p2 < 0.0 || p3 < 0.0 || p4 < 0.0)
        throw ConfigError("burst distribution: probabilities must be >= 0");
    const double sum = p1 + p2 + p3 + p4;
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ConfigError("burst distribution: probabilities must sum to 1");
    if (mean_length() <= 0.0)
        throw ConfigError("burst distribution: degenerate distribution");
}

LostInjection inject_lost_samples(const ChannelTensor &tensor, double rate, double depth_db,
                                  const BurstDist &burst, std::uint64_t seed)
{
    tensor.validate();
    burst.validate();
    if (rate < 0.0 || rate > 0.1)
        throw ConfigError("inject_lost_samples: rate must be in [0, 0.1]");
    if (rate > 0.0 && depth_db < 10.0)
        throw ConfigError("inject_lost_samples: depth must be >= 10 dB");
    if (rate * static_cast<double>(tensor.n_time) > 0.5 * static_cast<double>(tensor.n_time))
        throw ConfigError("inject_lost_samples: expected losses exceed N/2");

    LostInjection result;
    result.tensor = tensor;
    result.truth_mask.assign(tensor.n_time, 0);
    if (rate == 0.0)
        return result;

    const double start_prob = rate / burst.mean_length();
    const double atten = std::pow(10.0, -depth_db / 20.0);

    Rng rng(derive_stream_seed(seed, kStreamLostSamples));
    std::size_t n = 0;
    while (n < tensor.n_time) {
        if (result.truth_mask[n] == 0 && rng.next_halfopen01() < start_prob) {
            const double u = rng.next_halfopen01();
            std::size_t len = 1;
            if (u >= burst.p1)
                len = 2;
            if (u >= burst.p1 + burst.p2)
                len = 3;
            if (u >= burst.p1 + burst.p2 + burst.p3)
                len = 4;
            for (std::size_t j = n; j < std::min(n + len, tensor.n_time); ++j)
                result.truth_mask[j] = 1;
            n += len;
        } else {
            ++n;
        }
    }

    const std::size_t row = tensor.n_freq * tensor.n_ant;
    for (std::size_t t = 0; t < tensor.n_time; ++t)
        if (result.truth_mask[t]) {
            std::complex<double> *p = result.tensor.data.data() + t * row;
            for (std::size_t i = 0; i < row; ++i)
                p[i] *= atten;
        }
    return result;
}

} // namespace chanhard
