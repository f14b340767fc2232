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
// Command-line front end binding the analysis modules into reproducible
// runs. Every subcommand writes its artifacts plus a manifest recording the
// resolved configuration, seeds and input/output hashes; nothing in the
// output depends on wall-clock time, so a rerun with the same inputs
// produces identical files.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chanhard/cht_io.hpp"
#include "chanhard/hardening.hpp"
#include "chanhard/preprocess.hpp"
#include "chanhard/reports.hpp"
#include "chanhard/shadowing.hpp"
#include "chanhard/synth.hpp"
#include "chanhard/tail_model.hpp"
#include "chanhard/version.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace chanhard;

namespace {

// Exit codes: 0 ok, 2 configuration errors, 3 data errors, 4 strict-mode
// escalation of insufficient-sample warnings.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitStrict = 4;

// Scenario presets mirroring the two measurement experiments: a static
// aisle scan for small-scale statistics and a corridor walk with a trend
// plus shadowing for large-scale statistics.
const char *kPresetAisleScan = R"json({
  "n_time": 6000, "n_freq": 100, "n_ant": 100,
  "model": "iid", "seed": 20260101,
  "carrier_freq_hz": 3.7e9, "bandwidth_hz": 20e6, "rep_rate_hz": 100,
  "array_kind": "co-located", "ue_orientation": "vertical"
})json";

const char *kPresetCorridorWalk = R"json({
  "n_time": 6000, "n_freq": 100, "n_ant": 100,
  "model": "iid", "seed": 20260102,
  "large_scale": {
    "slope_db_per_sample": -0.0012, "intercept_db": 22.26,
    "shadow_sigma_db": 2.41, "shadow_coherence": 20,
    "per_antenna_offset_sigma_db": 0.0
  },
  "carrier_freq_hz": 3.7e9, "bandwidth_hz": 20e6, "rep_rate_hz": 100,
  "array_kind": "co-located", "ue_orientation": "vertical"
})json";

struct PolicyFlags {
    std::string policy = "first";
    std::uint64_t policy_seed = 0;
    std::vector<std::size_t> sizes;
};

SubsetPolicy make_policy(const PolicyFlags &flags)
{
    SubsetPolicy policy;
    if (flags.policy == "first") {
        policy.mode = SubsetPolicy::Mode::FirstK;
    } else if (flags.policy == "random") {
        policy.mode = SubsetPolicy::Mode::RandomK;
        policy.seed = flags.policy_seed;
    } else if (flags.policy == "pol-v") {
        policy.mode = SubsetPolicy::Mode::PolarizationOnly;
        policy.polarization = Polarization::Vertical;
    } else if (flags.policy == "pol-h") {
        policy.mode = SubsetPolicy::Mode::PolarizationOnly;
        policy.polarization = Polarization::Horizontal;
    } else {
        throw ConfigError("unknown policy '" + flags.policy + "'");
    }
    if (!flags.sizes.empty())
        policy.sizes = flags.sizes;
    return policy;
}

// Clips curve sizes to what the policy can serve on this tensor, so the
// default size list works on small tensors too (only when the user did not
// pin sizes explicitly).
void clip_default_sizes(SubsetPolicy &policy, const ChannelTensor &tensor, bool user_sizes)
{
    if (user_sizes)
        return;
    const std::size_t avail = eligible_count(tensor.layout, policy);
    std::vector<std::size_t> kept;
    for (std::size_t s : policy.sizes)
        if (s <= avail)
            kept.push_back(s);
    if (!kept.empty())
        policy.sizes = kept;
}

std::string hex64(std::uint64_t v)
{
    char buf[19];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

class RunDir
{
  public:
    RunDir(const std::string &cli_value, const std::string &command)
    {
        // CHANHARD_OUT_DIR overrides the flag when set.
        const char *env = std::getenv("CHANHARD_OUT_DIR");
        std::string dir = env && *env ? env : cli_value;
        if (dir.empty())
            throw ConfigError(command + ": --out-dir is required "
                              "(or set CHANHARD_OUT_DIR)");
        dir_ = dir;
        fs::create_directories(dir_);
        manifest_["tool"] = "chanhard";
        manifest_["version"] = kVersion;
        manifest_["command"] = command;
    }

    const fs::path &path() const { return dir_; }

    void set_parameters(json params) { manifest_["parameters"] = std::move(params); }

    void record_input(const fs::path &p)
    {
        manifest_["inputs"].push_back({{"path", p.string()},
                                       {"bytes", fs::file_size(p)},
                                       {"fnv1a64", hex64(fnv1a_file_hash(p))}});
    }

    void write_text(const std::string &name, const std::string &content)
    {
        const fs::path p = dir_ / name;
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        if (!out)
            throw DataError("cannot open '" + p.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw DataError("short write to '" + p.string() + "'");
        out.close();
        manifest_["outputs"].push_back({{"file", name},
                                        {"bytes", content.size()},
                                        {"fnv1a64", hex64(fnv1a_file_hash(p))}});
    }

    void finish()
    {
        std::ofstream out(dir_ / "manifest.json", std::ios::binary | std::ios::trunc);
        out << manifest_.dump(2) << "\n";
    }

  private:
    fs::path dir_;
    json manifest_;
};

ChannelTensor load_tensor(const std::string &path)
{
    if (path.empty())
        throw ConfigError("--in is required");
    if (!fs::exists(path))
        throw ConfigError("input '" + path + "' does not exist");
    return read_cht(path);
}

// Statistics pipelines drop flagged samples; time-series fits interpolate
// them so the abscissa stays intact.
ChannelTensor drop_flagged(ChannelTensor tensor)
{
    if (tensor.has_lost_samples()) {
        const auto mask = tensor.lost_mask;
        std::cout << "dropping " << std::count(mask.begin(), mask.end(), 1)
                  << " flagged time samples\n";
        tensor = drop_lost(tensor, mask);
    }
    return tensor;
}

json policy_parameters(const PolicyFlags &flags, const SubsetPolicy &policy)
{
    return json{{"policy", flags.policy},
                {"policy_seed", flags.policy_seed},
                {"sizes", policy.sizes}};
}

// ----------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string config_path;
    std::string preset;
    std::string out_path;
    std::optional<std::uint64_t> seed_override;
};

int cmd_synth(const SynthArgs &args)
{
    std::string config_text;
    if (!args.preset.empty()) {
        if (args.preset == "aisle-scan")
            config_text = kPresetAisleScan;
        else if (args.preset == "corridor-walk")
            config_text = kPresetCorridorWalk;
        else
            throw ConfigError("unknown preset '" + args.preset + "'");
    } else if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in)
            throw ConfigError("cannot open config '" + args.config_path + "'");
        config_text.assign(std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>());
    } else {
        throw ConfigError("synth: either --config or --preset is required");
    }

    SynthConfig cfg = synth_config_from_text(config_text);
    if (args.seed_override)
        cfg.seed = *args.seed_override;

    if (args.out_path.empty())
        throw ConfigError("synth: --out is required");
    const fs::path out = args.out_path;
    if (out.has_parent_path())
        fs::create_directories(out.parent_path());

    const ChannelTensor tensor = generate(cfg);
    write_cht(tensor, out);

    json manifest{{"tool", "chanhard"},
                  {"version", kVersion},
                  {"command", "synth"},
                  {"parameters", json::parse(synth_config_to_text(cfg))},
                  {"outputs", json::array({json{{"file", out.filename().string()},
                                                {"bytes", fs::file_size(out)},
                                                {"fnv1a64", hex64(fnv1a_file_hash(out))}}})}};
    std::ofstream mf(out.string() + ".manifest.json", std::ios::binary | std::ios::trunc);
    mf << manifest.dump(2) << "\n";

    std::cout << "wrote " << out.string() << " (" << tensor.n_time << "x" << tensor.n_freq
              << "x" << tensor.n_ant << ")\n";
    return kExitOk;
}

// ----------------------------------------------------------------------
// qc

struct QcArgs {
    std::string in_path;
    std::string out_dir;
    QcOptions options;
    bool autocorr_csv = false;
    bool strict = false;
};

int cmd_qc(const QcArgs &args)
{
    const ChannelTensor tensor = load_tensor(args.in_path);
    RunDir run(args.out_dir, "qc");
    run.record_input(args.in_path);
    run.set_parameters(json{{"threshold_db", args.options.threshold_db},
                            {"window", args.options.window},
                            {"max_lag", args.options.max_lag},
                            {"envelope", args.options.envelope_autocorr},
                            {"assumed_ue_speed_mps", args.options.assumed_ue_speed_mps},
                            {"strict", args.strict}});

    const QcReport report = run_qc(tensor, args.options);
    run.write_text("qc_report.json", qc_report_text(report));
    if (args.autocorr_csv)
        run.write_text("autocorr.csv", autocorr_csv(report.autocorr));
    run.finish();

    std::cout << "flagged " << report.lost_indices.size() << " of " << tensor.n_time
              << " time samples; max UE speed " << report.max_ue_speed_mps << " m/s\n";
    if (args.strict && !report.nyquist_ok)
        return kExitStrict;
    return kExitOk;
}

// ----------------------------------------------------------------------
// hardening

struct CurveArgs {
    std::string in_path;
    std::string out_dir;
    PolicyFlags policy_flags;
    bool user_sizes = false;
};

int cmd_hardening(const CurveArgs &args)
{
    const ChannelTensor tensor = drop_flagged(load_tensor(args.in_path));
    SubsetPolicy policy = make_policy(args.policy_flags);
    clip_default_sizes(policy, tensor, args.user_sizes);

    RunDir run(args.out_dir, "hardening");
    run.record_input(args.in_path);
    run.set_parameters(policy_parameters(args.policy_flags, policy));

    const HardeningCurve curve = hardening_curve(tensor, policy);
    run.write_text("hardening.csv", hardening_csv(curve));
    run.finish();

    std::cout << "hardening amount " << curve.hardening_amount_db << " dB over sizes "
              << curve.points.front().subset_size << ".." << curve.points.back().subset_size
              << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------------
// tails

struct TailsArgs {
    CurveArgs curve;
    std::size_t ecdf_max_points = 4096;
    std::string method = "both"; // mle, mom, both
};

int cmd_tails(const TailsArgs &args)
{
    const ChannelTensor tensor = drop_flagged(load_tensor(args.curve.in_path));
    SubsetPolicy policy = make_policy(args.curve.policy_flags);
    clip_default_sizes(policy, tensor, args.curve.user_sizes);

    RunDir run(args.curve.out_dir, "tails");
    run.record_input(args.curve.in_path);
    json params = policy_parameters(args.curve.policy_flags, policy);
    params["ecdf_max_points"] = args.ecdf_max_points;
    params["method"] = args.method;
    run.set_parameters(std::move(params));

    std::vector<DofPoint> points;
    scan_subset_gains(tensor, policy, [&](std::size_t size, std::span<const double> gain) {
        DofPoint p;
        p.subset_size = size;
        p.mle = fit_gamma(gain, FitMethod::MLE);
        p.mom = fit_gamma(gain, FitMethod::MoM);
        points.push_back(p);
        const Ecdf ecdf = Ecdf::from_samples(gain);
        run.write_text("ecdf_m" + std::to_string(size) + ".csv",
                       ecdf_csv(ecdf, args.ecdf_max_points));
    });
    run.write_text("dof.csv", dof_csv(points, args.method));
    run.finish();

    std::cout << "fitted " << points.size() << " subset sizes; shape at M="
              << points.back().subset_size << " is " << points.back().mle.shape << "\n";
    return kExitOk;
}

// ----------------------------------------------------------------------
// margin

struct MarginArgs {
    CurveArgs curve;
    std::vector<double> p_list;
    std::string method = "empirical"; // empirical or analytic
    bool analytic = false;
    bool strict = false;
};

int cmd_margin(const MarginArgs &args)
{
    const std::vector<double> p_list =
        args.p_list.empty() ? FadingMarginTable::default_p_list() : args.p_list;

    if (args.analytic || args.method == "analytic") {
        SubsetPolicy policy = make_policy(args.curve.policy_flags);
        RunDir run(args.curve.out_dir, "margin");
        json params = policy_parameters(args.curve.policy_flags, policy);
        params["p_list"] = p_list;
        params["analytic"] = true;
        run.set_parameters(std::move(params));
        const FadingMarginTable table = fading_margin_table_analytic(policy.sizes, p_list);
        run.write_text("margin.csv", margin_csv(table));
        run.finish();
        std::cout << "analytic margins for " << table.rows.size() << " (size, p) pairs\n";
        return kExitOk;
    }

    const ChannelTensor tensor = drop_flagged(load_tensor(args.curve.in_path));
    SubsetPolicy policy = make_policy(args.curve.policy_flags);
    clip_default_sizes(policy, tensor, args.curve.user_sizes);

    RunDir run(args.curve.out_dir, "margin");
    run.record_input(args.curve.in_path);
    json params = policy_parameters(args.curve.policy_flags, policy);
    params["p_list"] = p_list;
    params["analytic"] = false;
    params["strict"] = args.strict;
    run.set_parameters(std::move(params));

    const FadingMarginTable table = fading_margin_table(tensor, policy, p_list);
    run.write_text("margin.csv", margin_csv(table));
    run.finish();

    std::size_t unreliable = 0;
    for (const auto &row : table.rows)
        unreliable += row.reliable ? 0 : 1;
    std::cout << table.rows.size() << " margin rows, " << unreliable
              << " below the 10/p sample-sufficiency rule\n";
    if (unreliable > 0 && args.strict)
        return kExitStrict;
    return kExitOk;
}

// ----------------------------------------------------------------------
// shadowing

struct ShadowingArgs {
    std::string in_path;
    std::string out_dir;
    std::size_t from_sample = 0;
};

int cmd_shadowing(const ShadowingArgs &args)
{
    ChannelTensor tensor = load_tensor(args.in_path);
    // Time-series analysis keeps the abscissa intact, so flagged samples
    // are interpolated rather than dropped.
    if (tensor.has_lost_samples())
        tensor = interpolate_lost(tensor, tensor.lost_mask);

    RunDir run(args.out_dir, "shadowing");
    run.record_input(args.in_path);
    run.set_parameters(json{{"from_sample", args.from_sample}});

    const ShadowingFit fit = analyze_shadowing(tensor, args.from_sample);
    std::vector<double> series = large_scale_series(tensor);
    series.erase(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(args.from_sample));

    run.write_text("shadowing_series.csv",
                   shadowing_series_csv(series, fit, args.from_sample));
    const NormalFit normal{fit.mu_hat, fit.sigma_hat};
    run.write_text("residual_cdf.csv",
                   residual_cdf_csv(residual_cdf_table(fit.residuals_db, normal)));
    run.write_text("shadowing_fit.json", shadowing_report_text(fit));
    run.finish();

    std::cout << "k=" << fit.slope_k << " dB/sample, m=" << fit.intercept_m
              << " dB, sigma=" << fit.sigma_hat << " dB, span [" << fit.span.first << ", "
              << fit.span.second << "] dB\n";
    return kExitOk;
}

// ----------------------------------------------------------------------
// report: qc -> hardening -> tails -> margin -> shadowing

struct ReportArgs {
    std::string in_path;
    std::string out_dir;
    PolicyFlags policy_flags;
    bool user_sizes = false;
    std::vector<double> p_list;
    QcOptions qc_options;
    std::size_t from_sample = 0;
    std::size_t ecdf_max_points = 4096;
    bool strict = false;
};

int cmd_report(const ReportArgs &args)
{
    ChannelTensor raw = load_tensor(args.in_path);

    RunDir run(args.out_dir, "report");
    run.record_input(args.in_path);

    const std::vector<double> p_list =
        args.p_list.empty() ? FadingMarginTable::default_p_list() : args.p_list;

    // QC pass on the raw tensor.
    const QcReport qc = run_qc(raw, args.qc_options);
    run.write_text("qc_report.json", qc_report_text(qc));
    run.write_text("autocorr.csv", autocorr_csv(qc.autocorr));

    // Detected flags, merged with any mask already carried by the file.
    std::vector<std::uint8_t> mask(raw.n_time, 0);
    for (std::size_t n : qc.lost_indices)
        mask[n] = 1;
    for (std::size_t n = 0; n < raw.lost_mask.size(); ++n)
        mask[n] |= raw.lost_mask[n];
    const bool any_lost = std::any_of(mask.begin(), mask.end(),
                                      [](std::uint8_t b) { return b != 0; });

    // Statistics run on the dropped tensor, the time-series fit on the
    // interpolated one. A clean tensor is used as-is, and the raw copy is
    // released once the derived tensors exist.
    ChannelTensor stats_store;
    ChannelTensor series_store;
    if (any_lost) {
        stats_store = drop_lost(raw, mask);
        series_store = interpolate_lost(raw, mask);
        raw = ChannelTensor{};
    } else {
        raw.lost_mask.clear();
    }
    const ChannelTensor &stats_tensor = any_lost ? stats_store : raw;
    const ChannelTensor &series_tensor = any_lost ? series_store : raw;

    SubsetPolicy policy = make_policy(args.policy_flags);
    clip_default_sizes(policy, stats_tensor, args.user_sizes);
    json params = policy_parameters(args.policy_flags, policy);
    params["p_list"] = p_list;
    params["threshold_db"] = args.qc_options.threshold_db;
    params["window"] = args.qc_options.window;
    params["max_lag"] = args.qc_options.max_lag;
    params["from_sample"] = args.from_sample;
    params["strict"] = args.strict;
    run.set_parameters(std::move(params));

    const HardeningCurve curve = hardening_curve(stats_tensor, policy);
    run.write_text("hardening.csv", hardening_csv(curve));

    std::vector<DofPoint> points;
    scan_subset_gains(stats_tensor, policy,
                      [&](std::size_t size, std::span<const double> gain) {
                          DofPoint p;
                          p.subset_size = size;
                          p.mle = fit_gamma(gain, FitMethod::MLE);
                          p.mom = fit_gamma(gain, FitMethod::MoM);
                          points.push_back(p);
                          const Ecdf ecdf = Ecdf::from_samples(gain);
                          run.write_text("ecdf_m" + std::to_string(size) + ".csv",
                                         ecdf_csv(ecdf, args.ecdf_max_points));
                      });
    run.write_text("dof.csv", dof_csv(points));

    const FadingMarginTable table = fading_margin_table(stats_tensor, policy, p_list);
    run.write_text("margin.csv", margin_csv(table));
    run.write_text("margin_reference.csv",
                   margin_csv(fading_margin_table_analytic(policy.sizes, p_list)));

    const ShadowingFit fit = analyze_shadowing(series_tensor, args.from_sample);
    std::vector<double> series = large_scale_series(series_tensor);
    series.erase(series.begin(), series.begin() + static_cast<std::ptrdiff_t>(args.from_sample));
    run.write_text("shadowing_series.csv",
                   shadowing_series_csv(series, fit, args.from_sample));
    const NormalFit normal{fit.mu_hat, fit.sigma_hat};
    run.write_text("residual_cdf.csv",
                   residual_cdf_csv(residual_cdf_table(fit.residuals_db, normal)));
    run.write_text("shadowing_fit.json", shadowing_report_text(fit));
    run.finish();

    std::size_t unreliable = 0;
    for (const auto &row : table.rows)
        unreliable += row.reliable ? 0 : 1;
    std::cout << "report complete: " << qc.lost_indices.size() << " lost samples, hardening "
              << curve.hardening_amount_db << " dB, " << unreliable
              << " unreliable margin rows\n";
    if (unreliable > 0 && args.strict)
        return kExitStrict;
    return kExitOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"massive MIMO channel hardening and reliability analysis"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    SynthArgs synth_args;
    std::uint64_t seed_override = 0;
    auto *synth = app.add_subcommand("synth", "generate a synthetic channel tensor (CHT v1)");
    synth->add_option("--config", synth_args.config_path,
                      "synth configuration file (structured text)");
    synth->add_option("--preset", synth_args.preset, "built-in scenario: aisle-scan "
                      "or corridor-walk");
    synth->add_option("--out", synth_args.out_path, "output tensor path");
    auto *seed_opt = synth->add_option("--seed", seed_override, "override the config seed");

    QcArgs qc_args;
    auto *qc = app.add_subcommand("qc", "lost-sample detection, autocorrelation and "
                                        "sampling checks");
    qc->add_option("--in", qc_args.in_path, "input tensor (CHT v1)");
    qc->add_option("--out-dir", qc_args.out_dir, "artifact directory");
    qc->add_option("--threshold-db", qc_args.options.threshold_db,
                   "detection threshold below the window median");
    qc->add_option("--window", qc_args.options.window, "median window length (odd)");
    qc->add_option("--max-lag", qc_args.options.max_lag, "autocorrelation lags to compute");
    qc->add_flag("--envelope", qc_args.options.envelope_autocorr,
                 "envelope autocorrelation instead of complex");
    qc->add_option("--ue-speed", qc_args.options.assumed_ue_speed_mps,
                   "assumed UE speed in m/s for the Nyquist check");
    qc->add_flag("--autocorr-csv", qc_args.autocorr_csv, "also write per-(f,m,lag) CSV");
    qc->add_flag("--strict", qc_args.strict, "exit 4 when the Nyquist check fails");

    auto add_policy_flags = [](CLI::App *cmd, PolicyFlags &flags) {
        cmd->add_option("--policy", flags.policy, "subset policy: first, random, pol-v, pol-h")
            ->check(CLI::IsMember({"first", "random", "pol-v", "pol-h"}));
        cmd->add_option("--policy-seed", flags.policy_seed, "seed for the random policy");
        return cmd->add_option("--sizes", flags.sizes, "subset sizes (ascending)")
            ->delimiter(',');
    };

    CurveArgs hardening_args;
    auto *hardening = app.add_subcommand("hardening",
                                         "std of combined gain vs antenna count");
    hardening->add_option("--in", hardening_args.in_path, "input tensor (CHT v1)");
    hardening->add_option("--out-dir", hardening_args.out_dir, "artifact directory");
    auto *hardening_sizes = add_policy_flags(hardening, hardening_args.policy_flags);

    TailsArgs tails_args;
    auto *tails = app.add_subcommand("tails", "gain ECDFs and gamma shape/scale (DoF) fits");
    tails->add_option("--in", tails_args.curve.in_path, "input tensor (CHT v1)");
    tails->add_option("--out-dir", tails_args.curve.out_dir, "artifact directory");
    auto *tails_sizes = add_policy_flags(tails, tails_args.curve.policy_flags);
    tails->add_option("--ecdf-max-points", tails_args.ecdf_max_points,
                      "max rows per ECDF CSV");
    tails->add_option("--method", tails_args.method, "fit rows to emit: mle, mom or both")
        ->check(CLI::IsMember({"mle", "mom", "both"}));

    MarginArgs margin_args;
    auto *margin = app.add_subcommand("margin", "fading margins per (subset size, outage p)");
    margin->add_option("--in", margin_args.curve.in_path, "input tensor (CHT v1)");
    margin->add_option("--out-dir", margin_args.curve.out_dir, "artifact directory");
    auto *margin_sizes = add_policy_flags(margin, margin_args.curve.policy_flags);
    margin->add_option("--p-list", margin_args.p_list, "outage probabilities in (0, 0.5]")
        ->delimiter(',');
    margin->add_option("--method", margin_args.method,
                       "margin source: empirical (ECDF) or analytic (Gamma(M,1/M))")
        ->check(CLI::IsMember({"empirical", "analytic"}));
    margin->add_flag("--analytic", margin_args.analytic,
                     "shorthand for --method analytic (no tensor needed)");
    margin->add_flag("--strict", margin_args.strict,
                     "exit 4 when any row fails the 10/p sufficiency rule");

    ShadowingArgs shadowing_args;
    auto *shadowing = app.add_subcommand("shadowing",
                                         "linear detrend and log-normal residual fit");
    shadowing->add_option("--in", shadowing_args.in_path, "input tensor (CHT v1)");
    shadowing->add_option("--out-dir", shadowing_args.out_dir, "artifact directory");
    shadowing->add_option("--from-sample", shadowing_args.from_sample,
                          "trim leading samples (e.g. a LoS segment)");

    ReportArgs report_args;
    auto *report = app.add_subcommand("report", "full chain: qc, hardening, tails, margin, "
                                                "shadowing");
    report->add_option("--in", report_args.in_path, "input tensor (CHT v1)");
    report->add_option("--out-dir", report_args.out_dir, "artifact directory");
    auto *report_sizes = add_policy_flags(report, report_args.policy_flags);
    report->add_option("--p-list", report_args.p_list, "outage probabilities")->delimiter(',');
    report->add_option("--threshold-db", report_args.qc_options.threshold_db,
                       "lost-sample detection threshold");
    report->add_option("--window", report_args.qc_options.window, "median window length");
    report->add_option("--max-lag", report_args.qc_options.max_lag, "autocorrelation lags");
    report->add_option("--from-sample", report_args.from_sample,
                       "trim leading samples in the shadowing fit");
    report->add_option("--ecdf-max-points", report_args.ecdf_max_points,
                       "max rows per ECDF CSV");
    report->add_flag("--strict", report_args.strict, "exit 4 on unreliable margin rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (synth->parsed()) {
            if (!seed_opt->empty())
                synth_args.seed_override = seed_override;
            return cmd_synth(synth_args);
        }
        if (qc->parsed())
            return cmd_qc(qc_args);
        if (hardening->parsed()) {
            hardening_args.user_sizes = !hardening_sizes->empty();
            return cmd_hardening(hardening_args);
        }
        if (tails->parsed()) {
            tails_args.curve.user_sizes = !tails_sizes->empty();
            return cmd_tails(tails_args);
        }
        if (margin->parsed()) {
            margin_args.curve.user_sizes = !margin_sizes->empty();
            return cmd_margin(margin_args);
        }
        if (shadowing->parsed())
            return cmd_shadowing(shadowing_args);
        if (report->parsed()) {
            report_args.user_sizes = !report_sizes->empty();
            return cmd_report(report_args);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DataError &e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitConfig;
}
