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

#ifndef CHANHARD_REPORTS_HPP
#define CHANHARD_REPORTS_HPP

#include <filesystem>
#include <string>

#include "chanhard/hardening.hpp"
#include "chanhard/preprocess.hpp"
#include "chanhard/shadowing.hpp"
#include "chanhard/synth.hpp"
#include "chanhard/tail_model.hpp"

namespace chanhard {

// CSV artifacts. All writers are deterministic: fixed column order,
// round-trippable "%.12g" number formatting, '\n' line endings.

// size,std_db,reference_std_db
std::string hardening_csv(const HardeningCurve &curve);

// size,shape,scale,method  (one row per size per fit method; `method`
// filters to "mle" or "mom", default "both")
std::string dof_csv(std::span<const DofPoint> points, const std::string &method = "both");

// size,p,margin_db,reliable
std::string margin_csv(const FadingMarginTable &table);

// value,probability  (Hazen plotting positions; thinned to at most
// max_points rows, keeping the extremes)
std::string ecdf_csv(const Ecdf &ecdf, std::size_t max_points = 4096);

// n,g_db,trend_db,residual_db
std::string shadowing_series_csv(std::span<const double> series_db, const ShadowingFit &fit,
                                 std::size_t first_sample_index = 0);

// residual_db,empirical_p,normal_fit_p
std::string residual_cdf_csv(std::span<const ResidualCdfRow> rows);

// f,m,lag,magnitude
std::string autocorr_csv(const Autocorrelation &ac);

// Structured-text (JSON) reports.
std::string qc_report_text(const QcReport &report);
std::string shadowing_report_text(const ShadowingFit &fit);

// SynthConfig <-> structured-text config file.
SynthConfig synth_config_from_text(const std::string &text);
std::string synth_config_to_text(const SynthConfig &cfg);

// 64-bit FNV-1a of a file, for provenance records in run manifests.
std::uint64_t fnv1a_file_hash(const std::filesystem::path &path);

} // namespace chanhard

#endif
