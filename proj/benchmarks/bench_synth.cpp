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

#include "chanhard/synth.hpp"

using namespace chanhard;

static void BM_GenIid(benchmark::State &state)
{
    SynthConfig cfg;
    cfg.n_time = static_cast<std::size_t>(state.range(0));
    cfg.n_freq = 100;
    cfg.n_ant = 100;
    cfg.seed = 1;
    for (auto _ : state) {
        auto t = gen_iid(cfg);
        benchmark::DoNotOptimize(t.data.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(cfg.n_time * cfg.n_freq * cfg.n_ant));
}
BENCHMARK(BM_GenIid)->Arg(60)->Arg(600);

static void BM_GenCorrelated(benchmark::State &state)
{
    SynthConfig cfg;
    cfg.n_time = 200;
    cfg.n_freq = 32;
    cfg.n_ant = 100;
    cfg.model = ChannelModel::Correlated;
    cfg.correlated.spatial_rho = 0.9;
    cfg.correlated.temporal_rho = 0.3;
    cfg.correlated.n_delay_taps = static_cast<std::size_t>(state.range(0));
    cfg.seed = 1;
    for (auto _ : state) {
        auto t = gen_correlated(cfg);
        benchmark::DoNotOptimize(t.data.data());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(cfg.n_time * cfg.n_freq * cfg.n_ant));
}
BENCHMARK(BM_GenCorrelated)->Arg(1)->Arg(4)->Arg(16);

static void BM_InjectLostSamples(benchmark::State &state)
{
    SynthConfig cfg;
    cfg.n_time = 2000;
    cfg.n_freq = 50;
    cfg.n_ant = 50;
    cfg.seed = 2;
    const ChannelTensor t = gen_iid(cfg);
    for (auto _ : state) {
        auto inj = inject_lost_samples(t, 0.01, 25.0, BurstDist{}, 3);
        benchmark::DoNotOptimize(inj.truth_mask.data());
    }
}
BENCHMARK(BM_InjectLostSamples);
