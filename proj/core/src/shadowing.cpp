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

#include "chanhard/shadowing.hpp"

#include <algorithm>
#include <cmath>

#include "chanhard/gamma_math.hpp"
#include "chanhard/preprocess.hpp"
#include "chanhard/stats.hpp"

namespace chanhard {

std::vector<double> large_scale_series(const ChannelTensor &tensor)
{
    return aggregate_gain_db(tensor);
}

LinearTrend detrend_linear(std::span<const double> series)
{
    const std::size_t n = series.size();
    if (n < 3)
        throw ConfigError("detrend_linear: need at least 3 points");

    const double nd = static_cast<double>(n);
    const double x_mean = 0.5 * (nd - 1.0);
    double sxx = 0.0;
    KahanSum sxy, sy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - x_mean;
        sxx += dx * dx;
        sxy.add(dx * series[i]);
        sy.add(series[i]);
    }
    const double y_mean = sy.value() / nd;

    LinearTrend trend;
    trend.slope = sxy.value() / sxx;
    trend.intercept = y_mean - trend.slope * x_mean;

    trend.residuals.resize(n);
    KahanSum sse;
    for (std::size_t i = 0; i < n; ++i) {
        const double fit = trend.slope * static_cast<double>(i) + trend.intercept;
        trend.residuals[i] = series[i] - fit;
        sse.add(trend.residuals[i] * trend.residuals[i]);
    }

    const double s2 = sse.value() / (nd - 2.0);
    trend.slope_stderr = std::sqrt(s2 / sxx);
    trend.intercept_stderr = std::sqrt(s2 * (1.0 / nd + x_mean * x_mean / sxx));
    return trend;
}

NormalFit fit_lognormal(std::span<const double> residuals_db)
{
    if (residuals_db.size() < 30)
        throw ConfigError("fit_lognormal: need at least 30 residuals");
    NormalFit fit;
    fit.mu = mean(residuals_db);
    KahanSum ss;
    for (double r : residuals_db) {
        const double d = r - fit.mu;
        ss.add(d * d);
    }
    fit.sigma = std::sqrt(ss.value() / (static_cast<double>(residuals_db.size()) - 1.0));
    return fit;
}

std::pair<double, double> shadowing_span(std::span<const double> residuals_db)
{
    if (residuals_db.empty())
        throw ConfigError("shadowing_span: empty residuals");
    const auto [lo, hi] = std::minmax_element(residuals_db.begin(), residuals_db.end());
    return {*lo, *hi};
}

ShadowingFit analyze_shadowing(const ChannelTensor &tensor, std::size_t from_sample)
{
    if (tensor.has_lost_samples())
        throw ConfigError("analyze_shadowing: tensor has unhandled lost samples");

    std::vector<double> series = large_scale_series(tensor);
    if (from_sample >= series.size())
        throw ConfigError("analyze_shadowing: from_sample trims the whole series");
    if (from_sample > 0)
        series.erase(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(from_sample));

    LinearTrend trend = detrend_linear(series);
    const NormalFit normal = fit_lognormal(trend.residuals);

    ShadowingFit fit;
    fit.slope_k = trend.slope;
    fit.intercept_m = trend.intercept;
    fit.slope_stderr = trend.slope_stderr;
    fit.intercept_stderr = trend.intercept_stderr;
    fit.mu_hat = normal.mu;
    fit.sigma_hat = normal.sigma;
    fit.span = shadowing_span(trend.residuals);
    fit.residuals_db = std::move(trend.residuals);
    return fit;
}

std::vector<ResidualCdfRow> residual_cdf_table(std::span<const double> residuals_db,
                                               const NormalFit &fit)
{
    if (residuals_db.empty())
        throw ConfigError("residual_cdf_table: empty residuals");

    std::vector<double> sorted(residuals_db.begin(), residuals_db.end());
    std::sort(sorted.begin(), sorted.end());

    std::vector<ResidualCdfRow> rows;
    rows.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        ResidualCdfRow row;
        row.residual_db = sorted[i];
        row.empirical_p = (static_cast<double>(i) + 0.5) / n; // Hazen position
        row.normal_fit_p =
            fit.sigma > 0.0 ? normal_cdf((sorted[i] - fit.mu) / fit.sigma)
                            : (sorted[i] >= fit.mu ? 1.0 : 0.0);
        rows.push_back(row);
    }
    return rows;
}

} // namespace chanhard
