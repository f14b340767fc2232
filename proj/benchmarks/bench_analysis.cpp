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

#include "chanhard/hardening.hpp"
#include "chanhard/preprocess.hpp"
#include "chanhard/synth.hpp"
#include "chanhard/tail_model.hpp"

using namespace chanhard;

namespace {

const ChannelTensor &fixture_tensor()
{
    static const ChannelTensor t = [] {
        SynthConfig cfg;
        cfg.n_time = 1000;
        cfg.n_freq = 50;
        cfg.n_ant = 100;
        cfg.seed = 42;
        return gen_iid(cfg);
    }();
    return t;
}

} // namespace

static void BM_HardeningCurve(benchmark::State &state)
{
    const ChannelTensor &t = fixture_tensor();
    SubsetPolicy policy; // default sizes up to 100
    for (auto _ : state) {
        auto curve = hardening_curve(t, policy);
        benchmark::DoNotOptimize(curve.hardening_amount_db);
    }
}
BENCHMARK(BM_HardeningCurve);

static void BM_DofCurve(benchmark::State &state)
{
    const ChannelTensor &t = fixture_tensor();
    SubsetPolicy policy;
    for (auto _ : state) {
        auto points = dof_curve(t, policy);
        benchmark::DoNotOptimize(points.back().mle.shape);
    }
}
BENCHMARK(BM_DofCurve);

static void BM_FitGammaMle(benchmark::State &state)
{
    const ChannelTensor &t = fixture_tensor();
    std::vector<std::size_t> all(t.n_ant);
    for (std::size_t m = 0; m < t.n_ant; ++m)
        all[m] = m;
    const GainSeries g = normalized_combined_gain(t, all);
    for (auto _ : state) {
        auto fit = fit_gamma(g.values, FitMethod::MLE);
        benchmark::DoNotOptimize(fit.shape);
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.values.size()));
}
BENCHMARK(BM_FitGammaMle);

static void BM_DetectLostSamples(benchmark::State &state)
{
    const ChannelTensor &t = fixture_tensor();
    for (auto _ : state) {
        auto mask = detect_lost_samples(t);
        benchmark::DoNotOptimize(mask.data());
    }
}
BENCHMARK(BM_DetectLostSamples);

static void BM_TimeAutocorrelation(benchmark::State &state)
{
    SynthConfig cfg;
    cfg.n_time = 2000;
    cfg.n_freq = 10;
    cfg.n_ant = 10;
    cfg.seed = 7;
    const ChannelTensor t = gen_iid(cfg);
    for (auto _ : state) {
        auto ac = time_autocorrelation(t, static_cast<std::size_t>(state.range(0)));
        benchmark::DoNotOptimize(ac.summary_lag);
    }
}
BENCHMARK(BM_TimeAutocorrelation)->Arg(5)->Arg(20);
