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

#include "chanhard/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "chanhard/stats.hpp"

namespace chanhard {

std::vector<double> aggregate_gain_db(const ChannelTensor &tensor)
{
    tensor.validate();
    const std::size_t row = tensor.n_freq * tensor.n_ant;
    std::vector<double> g(tensor.n_time);
    for (std::size_t n = 0; n < tensor.n_time; ++n) {
        const std::complex<double> *p = tensor.data.data() + n * row;
        KahanSum sum;
        for (std::size_t i = 0; i < row; ++i)
            sum.add(std::norm(p[i]));
        const double lin = sum.value() / static_cast<double>(tensor.n_freq);
        if (lin <= 0.0)
            throw DataError("aggregate_gain_db: zero-power time sample " + std::to_string(n));
        g[n] = db_from_linear(lin);
    }
    return g;
}

namespace {

double window_median(const std::vector<double> &g, const std::vector<std::uint8_t> &flags,
                     std::size_t center, std::size_t window, std::vector<double> &scratch)
{
    const std::size_t n = g.size();
    const std::size_t half = window / 2;
    std::size_t start = center > half ? center - half : 0;
    if (start + window > n)
        start = n - window;

    scratch.clear();
    for (std::size_t j = start; j < start + window; ++j)
        if (j != center && !flags[j])
            scratch.push_back(g[j]);
    if (scratch.size() < 2)
        for (std::size_t j = start; j < start + window; ++j)
            if (j != center)
                scratch.push_back(g[j]);

    const std::size_t mid = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + mid, scratch.end());
    double med = scratch[mid];
    if (scratch.size() % 2 == 0) {
        const double lower = *std::max_element(scratch.begin(), scratch.begin() + mid);
        med = 0.5 * (med + lower);
    }
    return med;
}

} // namespace

std::vector<std::uint8_t> detect_lost_samples(const ChannelTensor &tensor, double threshold_db,
                                              std::size_t window)
{
    if (window < 3 || window % 2 == 0)
        throw ConfigError("detect_lost_samples: window must be odd and >= 3");
    if (tensor.n_time <= window)
        throw ConfigError("detect_lost_samples: need N > window");
    if (threshold_db <= 0.0)
        throw ConfigError("detect_lost_samples: threshold must be positive");

    const std::vector<double> g = aggregate_gain_db(tensor);
    std::vector<std::uint8_t> flags(g.size(), 0);
    std::vector<double> scratch;
    scratch.reserve(window);

    for (int pass = 0; pass < 16; ++pass) {
        bool changed = false;
        for (std::size_t n = 0; n < g.size(); ++n) {
            const double med = window_median(g, flags, n, window, scratch);
            const std::uint8_t flagged = (g[n] < med - threshold_db) ? 1 : 0;
            if (flagged != flags[n]) {
                flags[n] = flagged;
                changed = true;
            }
        }
        if (!changed)
            break;
    }
    return flags;
}

namespace {

void check_mask(const ChannelTensor &tensor, std::span<const std::uint8_t> mask)
{
    if (mask.size() != tensor.n_time)
        throw ConfigError("mask length does not match tensor N");
}

} // namespace

ChannelTensor interpolate_lost(const ChannelTensor &tensor, std::span<const std::uint8_t> mask)
{
    tensor.validate();
    check_mask(tensor, mask);

    std::size_t n_masked = 0;
    for (auto b : mask)
        n_masked += (b != 0);
    ChannelTensor out = tensor;
    out.lost_mask.clear();
    if (n_masked == 0)
        return out;
    if (n_masked == tensor.n_time)
        throw DataError("interpolate_lost: every time sample is masked");

    const std::size_t row = tensor.n_freq * tensor.n_ant;
    std::size_t n = 0;
    while (n < tensor.n_time) {
        if (!mask[n]) {
            ++n;
            continue;
        }
        std::size_t run_end = n;
        while (run_end + 1 < tensor.n_time && mask[run_end + 1])
            ++run_end;
        const bool has_left = n > 0;
        const bool has_right = run_end + 1 < tensor.n_time;
        const std::size_t left = has_left ? n - 1 : run_end + 1;
        const std::size_t right = has_right ? run_end + 1 : n - 1;

        for (std::size_t j = n; j <= run_end; ++j) {
            std::complex<double> *dst = out.data.data() + j * row;
            const std::complex<double> *a = tensor.data.data() + left * row;
            const std::complex<double> *b = tensor.data.data() + right * row;
            if (has_left && has_right) {
                const double w = static_cast<double>(j - left) /
                                 static_cast<double>(right - left);
                for (std::size_t i = 0; i < row; ++i)
                    dst[i] = a[i] + (b[i] - a[i]) * w;
            } else {
                const std::complex<double> *src = has_left ? a : b;
                for (std::size_t i = 0; i < row; ++i)
                    dst[i] = src[i];
            }
        }
        n = run_end + 1;
    }
    return out;
}

ChannelTensor drop_lost(const ChannelTensor &tensor, std::span<const std::uint8_t> mask)
{
    tensor.validate();
    check_mask(tensor, mask);

    std::size_t kept = 0;
    for (auto b : mask)
        kept += (b == 0);
    if (kept == 0)
        throw DataError("drop_lost: every time sample is masked");

    ChannelTensor out;
    out.n_time = kept;
    out.n_freq = tensor.n_freq;
    out.n_ant = tensor.n_ant;
    out.carrier_freq_hz = tensor.carrier_freq_hz;
    out.bandwidth_hz = tensor.bandwidth_hz;
    out.rep_rate_hz = tensor.rep_rate_hz;
    out.layout = tensor.layout;
    out.ue_orientation = tensor.ue_orientation;
    out.data.resize(out.coeff_count());

    const std::size_t row = tensor.n_freq * tensor.n_ant;
    std::size_t w = 0;
    for (std::size_t n = 0; n < tensor.n_time; ++n) {
        if (mask[n])
            continue;
        std::copy_n(tensor.data.data() + n * row, row, out.data.data() + w * row);
        ++w;
    }
    return out;
}

double autocorrelation_magnitude(std::span<const std::complex<double>> series,
                                 std::size_t lag, bool envelope)
{
    const std::size_t n_t = series.size();
    if (lag >= n_t)
        throw ConfigError("autocorrelation: lag must be below the series length");
    const std::size_t cnt = n_t - lag;

    if (!envelope) {
        // Complex correlation about zero; channel coefficients are
        // zero-mean by construction.
        std::complex<double> num{0.0, 0.0};
        double pa = 0.0, pb = 0.0;
        for (std::size_t n = 0; n < cnt; ++n) {
            num += std::conj(series[n]) * series[n + lag];
            pa += std::norm(series[n]);
            pb += std::norm(series[n + lag]);
        }
        const double denom = std::sqrt(pa * pb);
        return denom > 0.0 ? std::abs(num) / denom : 1.0;
    }

    double ma = 0.0, mb = 0.0;
    for (std::size_t n = 0; n < cnt; ++n) {
        ma += std::abs(series[n]);
        mb += std::abs(series[n + lag]);
    }
    ma /= static_cast<double>(cnt);
    mb /= static_cast<double>(cnt);
    double num = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t n = 0; n < cnt; ++n) {
        const double da = std::abs(series[n]) - ma;
        const double db = std::abs(series[n + lag]) - mb;
        num += da * db;
        va += da * da;
        vb += db * db;
    }
    const double denom = std::sqrt(va * vb);
    return denom > 0.0 ? std::fabs(num) / denom : 1.0;
}

Autocorrelation time_autocorrelation(const ChannelTensor &tensor, std::size_t max_lag,
                                     bool envelope)
{
    tensor.validate();
    if (max_lag < 1)
        throw ConfigError("time_autocorrelation: max_lag must be >= 1");
    if (2 * max_lag >= tensor.n_time)
        throw ConfigError("time_autocorrelation: need N > 2*max_lag");

    const std::size_t n_t = tensor.n_time, n_f = tensor.n_freq, m_ant = tensor.n_ant;

    Autocorrelation ac;
    ac.n_freq = n_f;
    ac.n_ant = m_ant;
    ac.max_lag = max_lag;
    ac.envelope = envelope;
    ac.magnitudes.resize(n_f * m_ant * max_lag);
    ac.first_lag_below_half.resize(n_f * m_ant, max_lag + 1);

    std::vector<std::complex<double>> series(n_t);

    for (std::size_t f = 0; f < n_f; ++f)
        for (std::size_t m = 0; m < m_ant; ++m) {
            for (std::size_t n = 0; n < n_t; ++n)
                series[n] = tensor.at(n, f, m);

            double *mags = ac.magnitudes.data() + (f * m_ant + m) * max_lag;
            for (std::size_t lag = 1; lag <= max_lag; ++lag)
                mags[lag - 1] = autocorrelation_magnitude(series, lag, envelope);

            for (std::size_t lag = 1; lag <= max_lag; ++lag)
                if (mags[lag - 1] < 0.5) {
                    ac.first_lag_below_half[f * m_ant + m] = lag;
                    break;
                }
        }

    ac.summary_lag = 0;
    for (std::size_t v : ac.first_lag_below_half)
        ac.summary_lag = std::max(ac.summary_lag, v);
    return ac;
}

double max_ue_speed_mps(double rep_rate_hz, double carrier_freq_hz)
{
    if (rep_rate_hz <= 0.0 || carrier_freq_hz <= 0.0)
        throw ConfigError("max_ue_speed: frequencies must be positive");
    return speed_of_light_mps * rep_rate_hz / (2.0 * carrier_freq_hz);
}

std::map<std::size_t, std::size_t> burst_histogram(std::span<const std::uint8_t> mask)
{
    std::map<std::size_t, std::size_t> hist;
    std::size_t run = 0;
    for (std::size_t n = 0; n <= mask.size(); ++n) {
        const bool lost = n < mask.size() && mask[n];
        if (lost) {
            ++run;
        } else if (run > 0) {
            ++hist[run];
            run = 0;
        }
    }
    return hist;
}

QcReport run_qc(const ChannelTensor &tensor, const QcOptions &options)
{
    QcReport report;
    const auto mask = detect_lost_samples(tensor, options.threshold_db, options.window);
    for (std::size_t n = 0; n < mask.size(); ++n)
        if (mask[n])
            report.lost_indices.push_back(n);
    report.burst_histogram = burst_histogram(mask);
    report.autocorr = time_autocorrelation(tensor, options.max_lag, options.envelope_autocorr);
    report.max_ue_speed_mps = max_ue_speed_mps(tensor.rep_rate_hz, tensor.carrier_freq_hz);
    report.nyquist_ok = options.assumed_ue_speed_mps <= report.max_ue_speed_mps;
    return report;
}

} // namespace chanhard
