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

#ifndef CHANHARD_SHADOWING_HPP
#define CHANHARD_SHADOWING_HPP

#include <span>
#include <utility>
#include <vector>

#include "chanhard/tensor.hpp"

namespace chanhard {

// Frequency-averaged, antenna-summed dB gain per time sample on the raw
// (un-normalized) coefficients; intercepts are absolute dB levels here.
std::vector<double> large_scale_series(const ChannelTensor &tensor);

// Ordinary least squares y = k*x + m over x = 0..n-1, with residuals and
// the classical standard errors of the two coefficients.
struct LinearTrend {
    double slope = 0.0;     // dB per time sample
    double intercept = 0.0; // dB
    std::vector<double> residuals;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
};

LinearTrend detrend_linear(std::span<const double> series);

// Sample mean and unbiased sample std of the dB residuals; a normal fit of
// the dB values is a log-normal fit of the linear gains.
struct NormalFit {
    double mu = 0.0;
    double sigma = 0.0;
};

NormalFit fit_lognormal(std::span<const double> residuals_db);

std::pair<double, double> shadowing_span(std::span<const double> residuals_db);

struct ShadowingFit {
    double slope_k = 0.0;
    double intercept_m = 0.0;
    double slope_stderr = 0.0;
    double intercept_stderr = 0.0;
    std::vector<double> residuals_db;
    double mu_hat = 0.0;
    double sigma_hat = 0.0;
    std::pair<double, double> span{0.0, 0.0};
};

// Full pipeline: aggregate series, linear detrend, log-normal residual fit.
// `from_sample` trims the leading samples (e.g. a LoS segment) first.
ShadowingFit analyze_shadowing(const ChannelTensor &tensor, std::size_t from_sample = 0);

// Rows (residual, empirical CDF, fitted normal CDF) for plotting the
// residual distribution against its normal fit.
struct ResidualCdfRow {
    double residual_db = 0.0;
    double empirical_p = 0.0;
    double normal_fit_p = 0.0;
};

std::vector<ResidualCdfRow> residual_cdf_table(std::span<const double> residuals_db,
                                               const NormalFit &fit);

} // namespace chanhard

#endif
