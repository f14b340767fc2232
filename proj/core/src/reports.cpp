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

#include "chanhard/reports.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace chanhard {

namespace {

using json = nlohmann::json;

std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string hardening_csv(const HardeningCurve &curve)
{
    std::string out = "size,std_db,reference_std_db\n";
    for (const auto &p : curve.points) {
        const double ref_db = -5.0 * std::log10(static_cast<double>(p.subset_size));
        out += std::to_string(p.subset_size) + ',' + num(p.std_db) + ',' + num(ref_db) + '\n';
    }
    return out;
}

std::string dof_csv(std::span<const DofPoint> points, const std::string &method)
{
    if (method != "mle" && method != "mom" && method != "both")
        throw ConfigError("dof_csv: method must be mle, mom or both");
    std::string out = "size,shape,scale,method\n";
    for (const auto &p : points) {
        if (method != "mom")
            out += std::to_string(p.subset_size) + ',' + num(p.mle.shape) + ',' +
                   num(p.mle.scale) + ",mle\n";
        if (method != "mle")
            out += std::to_string(p.subset_size) + ',' + num(p.mom.shape) + ',' +
                   num(p.mom.scale) + ",mom\n";
    }
    return out;
}

std::string margin_csv(const FadingMarginTable &table)
{
    std::string out = "size,p,margin_db,reliable\n";
    for (const auto &r : table.rows)
        out += std::to_string(r.subset_size) + ',' + num(r.outage_probability) + ',' +
               num(r.margin_db) + ',' + (r.reliable ? "true" : "false") + '\n';
    return out;
}

std::string ecdf_csv(const Ecdf &ecdf, std::size_t max_points)
{
    std::string out = "value,probability\n";
    const std::size_t n = ecdf.count();
    const auto &sorted = ecdf.sorted();
    if (max_points < 2)
        max_points = 2;

    // Thin on the index grid but always keep the first and last order
    // statistic so the tails of the plot stay exact.
    const std::size_t step = n <= max_points ? 1 : (n + max_points - 1) / max_points;
    for (std::size_t i = 0; i < n; i += step) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        out += num(sorted[i]) + ',' + num(p) + '\n';
    }
    if (step > 1 && (n - 1) % step != 0) {
        const double p = (static_cast<double>(n - 1) + 0.5) / static_cast<double>(n);
        out += num(sorted[n - 1]) + ',' + num(p) + '\n';
    }
    return out;
}

std::string shadowing_series_csv(std::span<const double> series_db, const ShadowingFit &fit,
                                 std::size_t first_sample_index)
{
    if (series_db.size() != fit.residuals_db.size())
        throw ConfigError("shadowing_series_csv: series/residual length mismatch");
    std::string out = "n,g_db,trend_db,residual_db\n";
    for (std::size_t i = 0; i < series_db.size(); ++i) {
        const double trend = fit.slope_k * static_cast<double>(i) + fit.intercept_m;
        out += std::to_string(first_sample_index + i) + ',' + num(series_db[i]) + ',' +
               num(trend) + ',' + num(fit.residuals_db[i]) + '\n';
    }
    return out;
}

std::string residual_cdf_csv(std::span<const ResidualCdfRow> rows)
{
    std::string out = "residual_db,empirical_p,normal_fit_p\n";
    for (const auto &r : rows)
        out += num(r.residual_db) + ',' + num(r.empirical_p) + ',' + num(r.normal_fit_p) + '\n';
    return out;
}

std::string autocorr_csv(const Autocorrelation &ac)
{
    std::string out = "f,m,lag,magnitude\n";
    for (std::size_t f = 0; f < ac.n_freq; ++f)
        for (std::size_t m = 0; m < ac.n_ant; ++m)
            for (std::size_t lag = 1; lag <= ac.max_lag; ++lag)
                out += std::to_string(f) + ',' + std::to_string(m) + ',' +
                       std::to_string(lag) + ',' + num(ac.magnitude(f, m, lag)) + '\n';
    return out;
}

std::string qc_report_text(const QcReport &report)
{
    json burst = json::object();
    for (const auto &[len, count] : report.burst_histogram)
        burst[std::to_string(len)] = count;

    json j{{"lost_indices", report.lost_indices},
           {"lost_count", report.lost_indices.size()},
           {"burst_histogram", std::move(burst)},
           {"autocorr",
            {{"max_lag", report.autocorr.max_lag},
             {"mode", report.autocorr.envelope ? "envelope" : "complex"},
             {"summary_first_lag_below_half", report.autocorr.summary_lag}}},
           {"max_ue_speed_mps", report.max_ue_speed_mps},
           {"nyquist_ok", report.nyquist_ok}};
    return j.dump(2) + "\n";
}

std::string shadowing_report_text(const ShadowingFit &fit)
{
    json j{{"slope_k_db_per_sample", fit.slope_k},
           {"intercept_m_db", fit.intercept_m},
           {"slope_stderr", fit.slope_stderr},
           {"intercept_stderr", fit.intercept_stderr},
           {"mu_hat_db", fit.mu_hat},
           {"sigma_hat_db", fit.sigma_hat},
           {"span_min_db", fit.span.first},
           {"span_max_db", fit.span.second},
           {"n_samples", fit.residuals_db.size()}};
    return j.dump(2) + "\n";
}

namespace {

ChannelModel model_from_string(const std::string &s)
{
    if (s == "iid")
        return ChannelModel::Iid;
    if (s == "correlated")
        return ChannelModel::Correlated;
    if (s == "rician")
        return ChannelModel::Rician;
    throw ConfigError("synth config: unknown model '" + s + "'");
}

const char *model_to_string(ChannelModel m)
{
    switch (m) {
    case ChannelModel::Iid:
        return "iid";
    case ChannelModel::Correlated:
        return "correlated";
    default:
        return "rician";
    }
}

} // namespace

SynthConfig synth_config_from_text(const std::string &text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw ConfigError(std::string("synth config: ") + e.what());
    }

    SynthConfig cfg;
    try {
        cfg.n_time = j.at("n_time").get<std::size_t>();
        cfg.n_freq = j.at("n_freq").get<std::size_t>();
        cfg.n_ant = j.at("n_ant").get<std::size_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        cfg.model = model_from_string(j.value("model", std::string("iid")));

        if (j.contains("correlated")) {
            const auto &c = j.at("correlated");
            cfg.correlated.spatial_rho = c.value("spatial_rho", 0.0);
            cfg.correlated.temporal_rho = c.value("temporal_rho", 0.0);
            cfg.correlated.n_delay_taps = c.value("n_delay_taps", std::size_t{1});
        }
        cfg.rician_k_factor = j.value("rician_k_factor", 0.0);

        if (j.contains("large_scale")) {
            const auto &p = j.at("large_scale");
            TrendProfile profile;
            profile.slope_db_per_sample = p.value("slope_db_per_sample", 0.0);
            profile.intercept_db = p.value("intercept_db", 0.0);
            profile.shadow_sigma_db = p.value("shadow_sigma_db", 0.0);
            profile.shadow_coherence = p.value("shadow_coherence", std::size_t{1});
            profile.per_antenna_offset_sigma_db = p.value("per_antenna_offset_sigma_db", 0.0);
            cfg.large_scale = profile;
        }

        cfg.carrier_freq_hz = j.value("carrier_freq_hz", 3.7e9);
        cfg.bandwidth_hz = j.value("bandwidth_hz", 20e6);
        cfg.rep_rate_hz = j.value("rep_rate_hz", 100.0);

        const std::string kind = j.value("array_kind", std::string("co-located"));
        if (kind == "co-located")
            cfg.array_kind = ArrayKind::CoLocated;
        else if (kind == "distributed")
            cfg.array_kind = ArrayKind::Distributed;
        else
            throw ConfigError("synth config: unknown array_kind '" + kind + "'");

        const std::string ue = j.value("ue_orientation", std::string("vertical"));
        if (ue == "vertical")
            cfg.ue_orientation = UeOrientation::Vertical;
        else if (ue == "horizontal")
            cfg.ue_orientation = UeOrientation::Horizontal;
        else
            throw ConfigError("synth config: unknown ue_orientation '" + ue + "'");
    } catch (const json::exception &e) {
        throw ConfigError(std::string("synth config: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

std::string synth_config_to_text(const SynthConfig &cfg)
{
    json j{{"n_time", cfg.n_time},
           {"n_freq", cfg.n_freq},
           {"n_ant", cfg.n_ant},
           {"model", model_to_string(cfg.model)},
           {"seed", cfg.seed},
           {"carrier_freq_hz", cfg.carrier_freq_hz},
           {"bandwidth_hz", cfg.bandwidth_hz},
           {"rep_rate_hz", cfg.rep_rate_hz},
           {"array_kind", to_string(cfg.array_kind)},
           {"ue_orientation", to_string(cfg.ue_orientation)}};
    if (cfg.model == ChannelModel::Correlated)
        j["correlated"] = {{"spatial_rho", cfg.correlated.spatial_rho},
                           {"temporal_rho", cfg.correlated.temporal_rho},
                           {"n_delay_taps", cfg.correlated.n_delay_taps}};
    if (cfg.model == ChannelModel::Rician)
        j["rician_k_factor"] = cfg.rician_k_factor;
    if (cfg.large_scale)
        j["large_scale"] = {{"slope_db_per_sample", cfg.large_scale->slope_db_per_sample},
                            {"intercept_db", cfg.large_scale->intercept_db},
                            {"shadow_sigma_db", cfg.large_scale->shadow_sigma_db},
                            {"shadow_coherence", cfg.large_scale->shadow_coherence},
                            {"per_antenna_offset_sigma_db",
                             cfg.large_scale->per_antenna_offset_sigma_db}};
    return j.dump(2) + "\n";
}

std::uint64_t fnv1a_file_hash(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open '" + path.string() + "' for hashing");
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buf[65536];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        const std::streamsize got = in.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buf[i]);
            hash *= 0x100000001b3ULL;
        }
        if (got < static_cast<std::streamsize>(sizeof(buf)))
            break;
    }
    return hash;
}

} // namespace chanhard
