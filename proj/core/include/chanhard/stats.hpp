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

#ifndef CHANHARD_STATS_HPP
#define CHANHARD_STATS_HPP

#include <cmath>
#include <cstddef>
#include <span>

#include "chanhard/types.hpp"

namespace chanhard {

// Compensated accumulator. The big reductions here run over up to ~1e8
// terms and several contracts are specified at 1e-12 relative error, which
// plain left-to-right summation does not guarantee at that length.
class KahanSum
{
  public:
    void add(double x)
    {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }

    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double mean(std::span<const double> xs)
{
    if (xs.empty())
        throw ConfigError("mean: empty input");
    KahanSum s;
    for (double x : xs)
        s.add(x);
    return s.value() / static_cast<double>(xs.size());
}

// Two-pass variance around the sample mean. `ddof` is the denominator
// correction: 0 for the population form, 1 for the unbiased form.
inline double variance(std::span<const double> xs, int ddof = 1)
{
    if (xs.size() <= static_cast<std::size_t>(ddof))
        throw ConfigError("variance: need more samples than ddof");
    const double mu = mean(xs);
    KahanSum s;
    for (double x : xs) {
        const double d = x - mu;
        s.add(d * d);
    }
    return s.value() / static_cast<double>(xs.size() - static_cast<std::size_t>(ddof));
}

inline double stddev(std::span<const double> xs, int ddof = 1)
{
    return std::sqrt(variance(xs, ddof));
}

} // namespace chanhard

#endif
