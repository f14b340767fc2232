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

#ifndef CHANHARD_TAIL_MODEL_HPP
#define CHANHARD_TAIL_MODEL_HPP

#include <span>
#include <string>
#include <vector>

#include "chanhard/gamma_math.hpp"
#include "chanhard/tensor.hpp"

namespace chanhard {

// Empirical CDF over linear gain samples. Quantiles use Hazen plotting
// positions (i - 0.5)/n with linear interpolation between order statistics;
// below the first position the minimum sample is returned and the query is
// reported unreliable.
class Ecdf
{
  public:
    static Ecdf from_samples(std::span<const double> samples);
    static Ecdf from_sorted(std::vector<double> sorted);

    std::size_t count() const { return sorted_.size(); }
    const std::vector<double> &sorted() const { return sorted_; }
    static const char *quantile_method() { return "hazen"; }

    double quantile(double p) const; // p in (0, 1)

    // True when p lies within the interpolation range of the plotting
    // positions, i.e. p >= 0.5/n and p <= (n-0.5)/n.
    bool quantile_in_range(double p) const;

    // Sample-sufficiency rule for tail work: count >= 10/p.
    bool tail_reliable(double p) const
    {
        return static_cast<double>(count()) * p >= 10.0;
    }

  private:
    std::vector<double> sorted_;
};

enum class FitMethod { MoM, MLE };

inline const char *to_string(FitMethod m)
{
    return m == FitMethod::MoM ? "mom" : "mle";
}

struct GammaFit {
    double shape = 0.0;
    double scale = 0.0;
    FitMethod method = FitMethod::MLE;
    std::size_t sample_count = 0;
};

// Gamma fit of positive samples. MoM: shape = mean^2/var, scale = var/mean
// (unbiased variance). MLE: solves ln(shape) - digamma(shape) =
// ln(mean) - mean(ln x) by safeguarded Newton to 1e-10, scale = mean/shape.
GammaFit fit_gamma(std::span<const double> samples, FitMethod method = FitMethod::MLE);

// Same fit constrained to unit mean (scale = 1/shape), the Gamma(M, 1/M)
// family of the MRC reference.
GammaFit fit_gamma_unit_mean(std::span<const double> samples,
                             FitMethod method = FitMethod::MLE);

// Fitted shape/scale per subset size. The shape reads as the effective
// number of independent channel components (DoF) behind the combined gain.
struct DofPoint {
    std::size_t subset_size = 0;
    GammaFit mle;
    GammaFit mom;
};

std::vector<DofPoint> dof_curve(const ChannelTensor &tensor, const SubsetPolicy &policy);

enum class OffsetUnits { DbGap, LinearGap };

struct CdfOffset {
    double value = 0.0;   // dB by default, linear gain with OffsetUnits::LinearGap
    bool reliable = true; // false when the ECDF cannot support the quantile
};

// Horizontal gap between the Gamma(shape, 1/shape) reference CDF and the
// empirical CDF at probability level p: 10*log10(Q_ref(p) / Q_emp(p)).
CdfOffset cdf_offset(const Ecdf &ecdf, double reference_shape, double p,
                     OffsetUnits units = OffsetUnits::DbGap);

// Fading margin F(p) = 10*log10(Q(0.5) / Q(p)), p in (0, 0.5].
double fading_margin_analytic(double shape, double p);
double fading_margin_empirical(const Ecdf &ecdf, double p);

struct MarginRow {
    std::size_t subset_size = 0;
    double outage_probability = 0.0;
    double margin_db = 0.0;
    bool reliable = true;
};

struct FadingMarginTable {
    std::vector<MarginRow> rows;

    static std::vector<double> default_p_list() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}; }
};

// Empirical margins for every (size, p) pair; reliable follows the 10/p
// sample-sufficiency rule.
FadingMarginTable fading_margin_table(const ChannelTensor &tensor, const SubsetPolicy &policy,
                                      std::span<const double> p_list);

// Analytic Gamma(M, 1/M) margins for the same (size, p) grid.
FadingMarginTable fading_margin_table_analytic(std::span<const std::size_t> sizes,
                                               std::span<const double> p_list);

} // namespace chanhard

#endif
