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

#include <benchmark/benchmark.h>

#include "chanhard/gamma_math.hpp"

using namespace chanhard;

static void BM_GammaP(benchmark::State &state)
{
    const double shape = static_cast<double>(state.range(0));
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_p(shape, shape * x));
        x = x < 3.0 ? x + 0.1 : 0.1;
    }
}
BENCHMARK(BM_GammaP)->Arg(1)->Arg(100);

static void BM_GammaQuantile(benchmark::State &state)
{
    const double shape = static_cast<double>(state.range(0));
    double p = 1e-5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_reference_quantile(shape, p));
        p = p < 0.4 ? p * 1.7 : 1e-5;
    }
}
BENCHMARK(BM_GammaQuantile)->Arg(1)->Arg(100);

static void BM_Digamma(benchmark::State &state)
{
    double x = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(digamma(x));
        x = x < 200.0 ? x + 0.37 : 0.5;
    }
}
BENCHMARK(BM_Digamma);
