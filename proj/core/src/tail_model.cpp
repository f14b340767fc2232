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

#include "chanhard/tail_model.hpp"

#include <algorithm>
#include <cmath>

#include "chanhard/stats.hpp"

namespace chanhard {

Ecdf Ecdf::from_samples(std::span<const double> samples)
{
    if (samples.empty())
        throw ConfigError("ecdf: empty sample set");
    std::vector<double> sorted(samples.begin(), samples.end());
    for (double x : sorted)
        if (!std::isfinite(x))
            throw ConfigError("ecdf: non-finite sample");
    std::sort(sorted.begin(), sorted.end());
    return from_sorted(std::move(sorted));
}

Ecdf Ecdf::from_sorted(std::vector<double> sorted)
{
    if (sorted.empty())
        throw ConfigError("ecdf: empty sample set");
    Ecdf e;
    e.sorted_ = std::move(sorted);
    return e;
}

double Ecdf::quantile(double p) const
{
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("ecdf quantile: p must be inside (0, 1)");
    const double n = static_cast<double>(sorted_.size());
    const double r = p * n - 0.5; // index on the Hazen plotting positions
    if (r <= 0.0)
        return sorted_.front();
    if (r >= n - 1.0)
        return sorted_.back();
    const std::size_t j = static_cast<std::size_t>(r);
    const double frac = r - static_cast<double>(j);
    return sorted_[j] + frac * (sorted_[j + 1] - sorted_[j]);
}

bool Ecdf::quantile_in_range(double p) const
{
    const double n = static_cast<double>(sorted_.size());
    return p >= 0.5 / n && p <= (n - 0.5) / n;
}

namespace {

struct SampleMoments {
    double mean = 0.0;
    double var = 0.0;      // unbiased
    double mean_log = 0.0; // mean of ln x
};

SampleMoments positive_sample_moments(std::span<const double> samples)
{
    if (samples.size() < 100)
        throw ConfigError("fit_gamma: need at least 100 samples");
    KahanSum sum, sum_log;
    for (double x : samples) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw ConfigError("fit_gamma: samples must be positive and finite");
        sum.add(x);
        sum_log.add(std::log(x));
    }
    SampleMoments m;
    const double n = static_cast<double>(samples.size());
    m.mean = sum.value() / n;
    m.mean_log = sum_log.value() / n;
    KahanSum ss;
    for (double x : samples) {
        const double d = x - m.mean;
        ss.add(d * d);
    }
    m.var = ss.value() / (n - 1.0);
    return m;
}

// Root of ln(k) - digamma(k) = target, target > 0. The left side decreases
// monotonically from +inf to 0, so the root is unique.
double solve_log_minus_digamma(double target)
{
    if (!(target > 0.0))
        throw ConfigError("fit_gamma: degenerate samples (zero spread)");

    double k = (3.0 - target + std::sqrt((target - 3.0) * (target - 3.0) + 24.0 * target)) /
               (12.0 * target);
    if (!(k > 0.0) || !std::isfinite(k))
        k = 1.0;

    double lo = k, hi = k;
    auto g = [target](double x) { return std::log(x) - digamma(x) - target; };
    for (int i = 0; i < 600 && g(lo) < 0.0; ++i)
        lo *= 0.5;
    for (int i = 0; i < 600 && g(hi) > 0.0; ++i)
        hi *= 2.0;

    for (int it = 0; it < 100; ++it) {
        const double f = g(k);
        if (std::fabs(f) <= 1e-10)
            break;
        if (f > 0.0)
            lo = k;
        else
            hi = k;
        const double deriv = 1.0 / k - trigamma(k); // < 0 for all k > 0
        double next = k - f / deriv;
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::fabs(next - k) <= 1e-14 * k) {
            k = next;
            break;
        }
        k = next;
    }
    return k;
}

} // namespace

GammaFit fit_gamma(std::span<const double> samples, FitMethod method)
{
    const SampleMoments m = positive_sample_moments(samples);

    GammaFit fit;
    fit.method = method;
    fit.sample_count = samples.size();

    if (method == FitMethod::MoM) {
        if (!(m.var > 0.0))
            throw ConfigError("fit_gamma: degenerate variance");
        fit.shape = m.mean * m.mean / m.var;
        fit.scale = m.var / m.mean;
    } else {
        const double target = std::log(m.mean) - m.mean_log; // > 0 unless constant
        fit.shape = solve_log_minus_digamma(target);
        fit.scale = m.mean / fit.shape;
    }
    return fit;
}

GammaFit fit_gamma_unit_mean(std::span<const double> samples, FitMethod method)
{
    const SampleMoments m = positive_sample_moments(samples);

    GammaFit fit;
    fit.method = method;
    fit.sample_count = samples.size();

    if (method == FitMethod::MoM) {
        // Var of Gamma(k, 1/k) is 1/k.
        if (!(m.var > 0.0))
            throw ConfigError("fit_gamma: degenerate variance");
        fit.shape = 1.0 / m.var;
    } else {
        // Stationarity of the Gamma(k, 1/k) log-likelihood in k:
        // ln(k) - digamma(k) = mean(x) - 1 - mean(ln x).
        fit.shape = solve_log_minus_digamma(m.mean - 1.0 - m.mean_log);
    }
    fit.scale = 1.0 / fit.shape;
    return fit;
}

std::vector<DofPoint> dof_curve(const ChannelTensor &tensor, const SubsetPolicy &policy)
{
    std::vector<DofPoint> points;
    points.reserve(policy.sizes.size());
    scan_subset_gains(tensor, policy, [&](std::size_t size, std::span<const double> gain) {
        DofPoint p;
        p.subset_size = size;
        p.mle = fit_gamma(gain, FitMethod::MLE);
        p.mom = fit_gamma(gain, FitMethod::MoM);
        points.push_back(p);
    });
    return points;
}

CdfOffset cdf_offset(const Ecdf &ecdf, double reference_shape, double p, OffsetUnits units)
{
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("cdf_offset: p must be inside (0, 1)");

    CdfOffset result;
    result.reliable = ecdf.tail_reliable(p) && ecdf.quantile_in_range(p);

    const double q_ref = gamma_reference_quantile(reference_shape, p);
    const double q_emp = ecdf.quantile(p);
    if (!(q_emp > 0.0))
        throw DataError("cdf_offset: non-positive empirical quantile");
    result.value =
        units == OffsetUnits::DbGap ? db_from_linear(q_ref / q_emp) : q_ref - q_emp;
    return result;
}

namespace {

void check_outage_probability(double p)
{
    if (!(p > 0.0))
        throw ConfigError("fading margin: p must be positive");
    if (p > 0.5)
        throw ConfigError("fading margin: p must not exceed 0.5");
}

} // namespace

double fading_margin_analytic(double shape, double p)
{
    check_outage_probability(p);
    const double q_med = gamma_reference_quantile(shape, 0.5);
    const double q_p = gamma_reference_quantile(shape, p);
    return db_from_linear(q_med / q_p);
}

double fading_margin_empirical(const Ecdf &ecdf, double p)
{
    check_outage_probability(p);
    const double q_med = ecdf.quantile(0.5);
    const double q_p = ecdf.quantile(p);
    if (!(q_p > 0.0))
        throw DataError("fading margin: non-positive empirical quantile");
    return db_from_linear(q_med / q_p);
}

FadingMarginTable fading_margin_table(const ChannelTensor &tensor, const SubsetPolicy &policy,
                                      std::span<const double> p_list)
{
    for (double p : p_list)
        check_outage_probability(p);

    FadingMarginTable table;
    table.rows.reserve(policy.sizes.size() * p_list.size());
    scan_subset_gains(tensor, policy, [&](std::size_t size, std::span<const double> gain) {
        const Ecdf ecdf = Ecdf::from_samples(gain);
        for (double p : p_list) {
            MarginRow row;
            row.subset_size = size;
            row.outage_probability = p;
            row.margin_db = fading_margin_empirical(ecdf, p);
            row.reliable = ecdf.tail_reliable(p);
            table.rows.push_back(row);
        }
    });
    return table;
}

FadingMarginTable fading_margin_table_analytic(std::span<const std::size_t> sizes,
                                               std::span<const double> p_list)
{
    FadingMarginTable table;
    table.rows.reserve(sizes.size() * p_list.size());
    for (std::size_t m : sizes)
        for (double p : p_list) {
            MarginRow row;
            row.subset_size = m;
            row.outage_probability = p;
            row.margin_db = fading_margin_analytic(static_cast<double>(m), p);
            row.reliable = true;
            table.rows.push_back(row);
        }
    return table;
}

} // namespace chanhard
