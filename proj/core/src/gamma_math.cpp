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

#include "chanhard/gamma_math.hpp"

#include <cmath>
#include <limits>

#include "chanhard/types.hpp"

namespace chanhard {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

// Lower incomplete gamma by its power series, valid for x < a + 1.
double gamma_p_series(double a, double x)
{
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < kMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a + 1.
double gamma_q_contfrac(double a, double x)
{
    double b = x + 1.0 - a;
    double c = 1.0 / kFpMin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kFpMin)
            d = kFpMin;
        c = b + an / c;
        if (std::fabs(c) < kFpMin)
            c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps)
            break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

// Gamma(a,1) density, used as the Newton derivative of P(a, .).
double gamma_pdf(double a, double x)
{
    if (x <= 0.0)
        return 0.0;
    return std::exp(-x + (a - 1.0) * std::log(x) - std::lgamma(a));
}

} // namespace

double gamma_p(double a, double x)
{
    if (a <= 0.0)
        throw ConfigError("gamma_p: shape must be positive");
    if (std::isnan(x))
        throw ConfigError("gamma_p: x is NaN");
    if (x <= 0.0)
        return 0.0;
    if (x < a + 1.0)
        return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double gamma_q(double a, double x)
{
    if (a <= 0.0)
        throw ConfigError("gamma_q: shape must be positive");
    if (std::isnan(x))
        throw ConfigError("gamma_q: x is NaN");
    if (x <= 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_contfrac(a, x);
}

double gamma_p_inverse(double a, double p)
{
    if (a <= 0.0)
        throw ConfigError("gamma_p_inverse: shape must be positive");
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("gamma_p_inverse: p must be inside (0, 1)");

    // Above the median the equation is solved against the upper tail
    // Q(a,x) = 1-p, which keeps full relative precision where P would
    // cancel against 1.
    const bool upper = p > 0.5;
    const double q = 1.0 - p;
    auto f_of = [&](double x) { return upper ? q - gamma_q(a, x) : gamma_p(a, x) - p; };

    // Initial guess: Wilson-Hilferty for a > 1, crude tail split otherwise.
    double x;
    if (a > 1.0) {
        const double z = normal_quantile(p);
        const double u = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
        x = a * u * u * u;
        if (!(x > 0.0))
            x = a * std::exp((std::log(p) + std::lgamma(a + 1.0)) / a);
    } else {
        const double t = 1.0 - a * (0.253 + a * 0.12);
        if (p < t)
            x = std::pow(p / t, 1.0 / a);
        else
            x = 1.0 - std::log(1.0 - (p - t) / (1.0 - t));
    }
    if (!(x > 0.0) || !std::isfinite(x))
        x = a;

    // Bracket [lo, hi] with f(lo) <= 0 <= f(hi); f is increasing in x.
    double lo = x, hi = x;
    for (int i = 0; i < 1100 && f_of(lo) > 0.0; ++i)
        lo *= 0.5;
    for (int i = 0; i < 1100 && f_of(hi) < 0.0; ++i)
        hi *= 2.0;

    // Safeguarded Newton: a step is taken only when it stays inside the
    // bracket and at least halves the residual slope-wise; otherwise the
    // bracket is bisected, so progress is guaranteed even where the CDF
    // spans hundreds of orders of magnitude.
    x = 0.5 * (lo + hi);
    double dx_old = hi - lo;
    double dx = dx_old;
    double f = f_of(x);
    double df = gamma_pdf(a, x);
    for (int it = 0; it < 300; ++it) {
        const bool newton_bad =
            (((x - hi) * df - f) * ((x - lo) * df - f) > 0.0) ||
            (std::fabs(2.0 * f) > std::fabs(dx_old * df));
        if (newton_bad) {
            dx_old = dx;
            dx = 0.5 * (hi - lo);
            x = lo + dx;
            if (x == lo)
                break; // bracket exhausted at double resolution
        } else {
            dx_old = dx;
            dx = f / df;
            const double prev = x;
            x -= dx;
            if (x == prev)
                break;
        }
        if (std::fabs(dx) <= 1e-13 * x)
            break;
        f = f_of(x);
        df = gamma_pdf(a, x);
        if (f < 0.0)
            lo = x;
        else
            hi = x;
    }
    return x;
}

double digamma(double x)
{
    if (x <= 0.0)
        throw ConfigError("digamma: argument must be positive");

    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }

    // Asymptotic series with Bernoulli coefficients through B12.
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = -0.5 * inv;
    series -= inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 -
               inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32760.0))))));
    return acc + std::log(x) + series;
}

double trigamma(double x)
{
    if (x <= 0.0)
        throw ConfigError("trigamma: argument must be positive");

    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }

    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = inv * (1.0 + 0.5 * inv);
    series += inv * inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 -
               inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0)))));
    return acc + series;
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw ConfigError("normal_quantile: p must be inside (0, 1)");

    // Acklam's rational approximation.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};

    const double p_low = 0.02425;
    double z;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        z = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        const double q = p - 0.5;
        const double r = q * q;
        z = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        z = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // One Halley step against the exact CDF.
    const double e = normal_cdf(z) - p;
    const double u = e * std::sqrt(2.0 * 3.14159265358979323846) * std::exp(0.5 * z * z);
    z = z - u / (1.0 + 0.5 * z * u);
    return z;
}

double gamma_reference_cdf(double shape, double x)
{
    if (shape <= 0.0)
        throw ConfigError("gamma_reference_cdf: shape must be positive");
    if (x < 0.0)
        return 0.0;
    return gamma_p(shape, shape * x);
}

double gamma_reference_quantile(double shape, double p)
{
    if (shape <= 0.0)
        throw ConfigError("gamma_reference_quantile: shape must be positive");
    return gamma_p_inverse(shape, p) / shape;
}

} // namespace chanhard
