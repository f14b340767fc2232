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
// End-to-end runs of the installed CLI surface: subcommands, exit codes,
// artifact layout and manifest-level reproducibility.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

#include <json.hpp>

#include "chanhard/cht_io.hpp"
#include "chanhard/gamma_math.hpp"
#include "chanhard/reports.hpp"

using namespace chanhard;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir()
    {
        path = fs::temp_directory_path() /
               ("chanhard_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(CHANHARD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

void write_file(const fs::path &p, const std::string &text)
{
    std::ofstream out(p);
    out << text;
}

std::string small_iid_config(std::uint64_t seed)
{
    return R"({"n_time": 1500, "n_freq": 40, "n_ant": 100, "model": "iid", "seed": )" +
           std::to_string(seed) + "}";
}

json load_json(const fs::path &p)
{
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

// Reads a CSV, returns rows of cells.
std::vector<std::vector<std::string>> load_csv(const fs::path &p)
{
    std::ifstream in(p);
    REQUIRE(in.good());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ','))
            cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_CASE("synth is deterministic: same config, identical files")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json", small_iid_config(4711));

    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " +
                    (tmp.path / "run1" / "t.cht").string()) == 0);
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " +
                    (tmp.path / "run2" / "t.cht").string()) == 0);

    CHECK(fnv1a_file_hash(tmp.path / "run1" / "t.cht") ==
          fnv1a_file_hash(tmp.path / "run2" / "t.cht"));
    CHECK(fnv1a_file_hash(tmp.path / "run1" / "t.cht.manifest.json") ==
          fnv1a_file_hash(tmp.path / "run2" / "t.cht.manifest.json"));

    // A different seed gives a different tensor.
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() +
                    " --seed 999 --out " + (tmp.path / "run3" / "t.cht").string()) == 0);
    CHECK(fnv1a_file_hash(tmp.path / "run1" / "t.cht") !=
          fnv1a_file_hash(tmp.path / "run3" / "t.cht"));
}

TEST_CASE("report writes the full artifact chain with correct endpoints")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json", small_iid_config(271828));
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path out = tmp.path / "report";
    const std::uint64_t input_hash_before = fnv1a_file_hash(cht);
    REQUIRE(run_cli("report --in " + cht + " --out-dir " + out.string()) == 0);
    CHECK(fnv1a_file_hash(cht) == input_hash_before); // inputs are never mutated

    for (const char *name :
         {"qc_report.json", "autocorr.csv", "hardening.csv", "dof.csv", "margin.csv",
          "margin_reference.csv", "shadowing_series.csv", "residual_cdf.csv",
          "shadowing_fit.json", "manifest.json", "ecdf_m1.csv", "ecdf_m100.csv"})
        CHECK(fs::exists(out / name));

    // Final hardening row: the i.i.d. default scenario reaches -10 dB.
    const auto rows = load_csv(out / "hardening.csv");
    REQUIRE(rows.size() >= 2);
    CHECK(rows.front() == std::vector<std::string>{"size", "std_db", "reference_std_db"});
    const auto &last = rows.back();
    REQUIRE(last.size() == 3);
    CHECK(last[0] == "100");
    CHECK(std::stod(last[1]) == doctest::Approx(-10.0).epsilon(0.02));

    // No lost samples in a clean synthetic tensor.
    const json qc = load_json(out / "qc_report.json");
    CHECK(qc.at("lost_count").get<int>() == 0);
    CHECK(qc.at("nyquist_ok").get<bool>());
}

TEST_CASE("margin below the sufficiency rule: exit 0 normally, 4 under --strict")
{
    TempDir tmp;
    // 1e4 gain samples per size: p = 1e-5 cannot satisfy 10/p.
    write_file(tmp.path / "cfg.json",
               R"({"n_time": 500, "n_freq": 20, "n_ant": 4, "model": "iid", "seed": 7})");
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path out = tmp.path / "m";
    CHECK(run_cli("margin --in " + cht + " --out-dir " + out.string() +
                  " --sizes 1,4 --p-list 1e-1,1e-5") == 0);
    const auto rows = load_csv(out / "margin.csv");
    bool saw_unreliable = false;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][1] == "1e-05")
            CHECK(rows[i][3] == "false");
        saw_unreliable |= (rows[i][3] == "false");
    }
    CHECK(saw_unreliable);

    CHECK(run_cli("margin --in " + cht + " --out-dir " + (tmp.path / "m2").string() +
                  " --sizes 1,4 --p-list 1e-1,1e-5 --strict") == 4);
}

TEST_CASE("analytic margins match the closed-form quantile ratios")
{
    TempDir tmp;
    const fs::path out = tmp.path / "a";
    REQUIRE(run_cli("margin --analytic --sizes 1,100 --p-list 1e-5 --out-dir " +
                    out.string()) == 0);
    const auto rows = load_csv(out / "margin.csv");
    REQUIRE(rows.size() == 3);
    const double m1 = std::stod(rows[1][2]);
    const double m100 = std::stod(rows[2][2]);
    CHECK(m1 == doctest::Approx(48.41).epsilon(0.001));
    CHECK(m100 <= 4.3);
    CHECK(rows[1][3] == "true");
}

TEST_CASE("config and data errors use distinct exit codes")
{
    TempDir tmp;
    // Missing input file: config error.
    CHECK(run_cli("hardening --in /nonexistent.cht --out-dir " +
                  (tmp.path / "x").string()) == 2);
    // Unknown flag: config error.
    CHECK(run_cli("hardening --no-such-flag") == 2);
    // Unknown preset: config error.
    CHECK(run_cli("synth --preset bogus --out " + (tmp.path / "y.cht").string()) == 2);

    // Corrupt tensor: data error.
    const fs::path bad = tmp.path / "bad.cht";
    write_file(bad, "not a tensor at all");
    CHECK(run_cli("qc --in " + bad.string() + " --out-dir " + (tmp.path / "q").string()) ==
          3);
}

TEST_CASE("environment variable overrides the output directory")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json",
               R"({"n_time": 300, "n_freq": 10, "n_ant": 8, "model": "iid", "seed": 5})");
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path env_dir = tmp.path / "env_out";
    const std::string cmd = "CHANHARD_OUT_DIR=" + env_dir.string() + " " + CHANHARD_CLI_PATH +
                            " hardening --in " + cht + " --sizes 1,8 --out-dir " +
                            (tmp.path / "ignored").string() + " > /dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(env_dir / "hardening.csv"));
    CHECK_FALSE(fs::exists(tmp.path / "ignored" / "hardening.csv"));
}

TEST_CASE("reruns reproduce every artifact hash recorded in the manifest")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json",
               R"({"n_time": 400, "n_freq": 16, "n_ant": 16, "model": "iid", "seed": 99})");
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path out1 = tmp.path / "r1";
    const fs::path out2 = tmp.path / "r2";
    REQUIRE(run_cli("report --in " + cht + " --sizes 1,4,16 --out-dir " + out1.string()) ==
            0);
    REQUIRE(run_cli("report --in " + cht + " --sizes 1,4,16 --out-dir " + out2.string()) ==
            0);

    const json manifest1 = load_json(out1 / "manifest.json");
    const json manifest2 = load_json(out2 / "manifest.json");
    CHECK(manifest1 == manifest2);
    for (const auto &entry : manifest1.at("outputs")) {
        const std::string name = entry.at("file").get<std::string>();
        std::ostringstream expect;
        expect << entry.at("fnv1a64").get<std::string>();
        char got[19];
        std::snprintf(got, sizeof(got), "0x%016llx",
                      static_cast<unsigned long long>(fnv1a_file_hash(out2 / name)));
        CHECK(expect.str() == got);
    }
}

TEST_CASE("tails --method filters the dof rows")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json",
               R"({"n_time": 400, "n_freq": 20, "n_ant": 8, "model": "iid", "seed": 17})");
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path out = tmp.path / "tails";
    REQUIRE(run_cli("tails --in " + cht + " --sizes 1,8 --method mom --out-dir " +
                    out.string()) == 0);
    const auto rows = load_csv(out / "dof.csv");
    REQUIRE(rows.size() == 3); // header + one row per size
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i][3] == "mom");

    const fs::path out2 = tmp.path / "tails_both";
    REQUIRE(run_cli("tails --in " + cht + " --sizes 1,8 --out-dir " + out2.string()) == 0);
    CHECK(load_csv(out2 / "dof.csv").size() == 5);
}

TEST_CASE("qc subcommand honours detection flags")
{
    TempDir tmp;
    write_file(tmp.path / "cfg.json",
               R"({"n_time": 600, "n_freq": 10, "n_ant": 10, "model": "iid", "seed": 31})");
    const std::string cht = (tmp.path / "t.cht").string();
    REQUIRE(run_cli("synth --config " + (tmp.path / "cfg.json").string() + " --out " + cht) ==
            0);

    const fs::path out = tmp.path / "qc";
    REQUIRE(run_cli("qc --in " + cht + " --threshold-db 12 --window 15 --max-lag 5 "
                    "--autocorr-csv --out-dir " + out.string()) == 0);
    CHECK(fs::exists(out / "qc_report.json"));
    CHECK(fs::exists(out / "autocorr.csv"));
    const json manifest = load_json(out / "manifest.json");
    CHECK(manifest.at("parameters").at("threshold_db").get<double>() == 12.0);
    CHECK(manifest.at("parameters").at("window").get<int>() == 15);

    // The Nyquist check escalates to exit 4 only under --strict.
    CHECK(run_cli("qc --in " + cht + " --ue-speed 10 --max-lag 5 --out-dir " +
                  (tmp.path / "qc2").string()) == 0);
    CHECK(run_cli("qc --in " + cht + " --ue-speed 10 --max-lag 5 --strict --out-dir " +
                  (tmp.path / "qc3").string()) == 4);
}
