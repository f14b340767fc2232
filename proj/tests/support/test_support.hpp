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
//
// Test-only oracles. The samplers here are deliberately independent of the
// code paths they are used to check: gamma variates come from the
// Marsaglia-Tsang rejection sampler, not from the quantile inverter, and
// the KS distance is computed directly against closed-form CDFs.

#ifndef CHANHARD_TEST_SUPPORT_HPP
#define CHANHARD_TEST_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "chanhard/rng.hpp"

namespace chanhard::test {

inline double exponential_draw(Rng &rng)
{
    return -std::log(rng.next_open01());
}

// Marsaglia-Tsang gamma sampler, shape k > 0, unit scale.
inline double gamma_draw(Rng &rng, double k)
{
    if (k < 1.0) {
        const double u = rng.next_open01();
        return gamma_draw(rng, k + 1.0) * std::pow(u, 1.0 / k);
    }
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / (3.0 * std::sqrt(d));
    for (;;) {
        double x, v;
        do {
            x = rng.next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.next_open01();
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v))
            return d * v;
    }
}

inline std::vector<double> gamma_sample(std::uint64_t seed, std::size_t n, double shape,
                                        double scale)
{
    Rng rng(seed);
    std::vector<double> xs(n);
    for (auto &x : xs)
        x = gamma_draw(rng, shape) * scale;
    return xs;
}

inline std::vector<double> exponential_sample(std::uint64_t seed, std::size_t n)
{
    Rng rng(seed);
    std::vector<double> xs(n);
    for (auto &x : xs)
        x = exponential_draw(rng);
    return xs;
}

// Two-sided Kolmogorov-Smirnov distance against a closed-form CDF.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)> &cdf)
{
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
    }
    return d;
}

inline double exp1_cdf(double x)
{
    return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x);
}

inline double sample_mean(const std::vector<double> &xs)
{
    double s = 0.0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_var(const std::vector<double> &xs)
{
    const double mu = sample_mean(xs);
    double s = 0.0;
    for (double x : xs)
        s += (x - mu) * (x - mu);
    return s / static_cast<double>(xs.size() - 1);
}

} // namespace chanhard::test

#endif
