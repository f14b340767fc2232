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

#ifndef CHANHARD_RNG_HPP
#define CHANHARD_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace chanhard {

// Deterministic generators are implemented here instead of <random> so that
// the same seed produces the same bit stream on every compiler and platform.

inline std::uint64_t splitmix64(std::uint64_t &state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna), seeded through splitmix64.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto &w : s_)
            w = splitmix64(sm);
    }

    std::uint64_t next_u64()
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in (0, 1]; never returns 0 so that log() is safe.
    double next_open01()
    {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Uniform in [0, 1).
    double next_halfopen01()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal pair via Box-Muller.
    void next_normal_pair(double &a, double &b)
    {
        const double u1 = next_open01();
        const double u2 = next_halfopen01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        a = r * std::cos(phi);
        b = r * std::sin(phi);
    }

    double next_normal()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double a, b;
        next_normal_pair(a, b);
        spare_ = b;
        have_spare_ = true;
        return a;
    }

    // Circularly-symmetric complex Gaussian, zero mean, unit variance.
    std::complex<double> next_cn01()
    {
        double a, b;
        next_normal_pair(a, b);
        constexpr double inv_sqrt2 = 0.70710678118654752440;
        return {a * inv_sqrt2, b * inv_sqrt2};
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t s_[4]{};
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Derives an independent stream seed for a named component of a generator,
// so e.g. the shadowing process and the per-antenna offsets do not share a
// stream even though they share the user-facing seed.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_tag)
{
    std::uint64_t sm = seed ^ (0x6a09e667f3bcc909ULL + stream_tag * 0x3c6ef372fe94f82bULL);
    return splitmix64(sm);
}

} // namespace chanhard

#endif
