// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "doctest.h"

#include <fstream>
#include <string>
#include <vector>

#include "cfrsim/cli.hpp"
#include "cfrsim/experiments.hpp"
#include "cfrsim/report.hpp"

using cfrsim::Experiment;
using cfrsim::RunConfig;

namespace {

RunConfig parsed(const std::vector<std::string>& args) {
    const cfrsim::CliResult r = cfrsim::parse_cli(args);
    REQUIRE(r.config.has_value());
    return *r.config;
}

} // namespace

TEST_CASE("cli requires a subcommand") {
    const auto r = cfrsim::parse_cli({});
    CHECK(!r.config.has_value());
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli maps subcommands to experiments") {
    CHECK(parsed({"power-profile"}).experiment == Experiment::PowerProfile);
    CHECK(parsed({"band-accuracy"}).experiment == Experiment::BandAccuracy);
    CHECK(parsed({"normality"}).experiment == Experiment::Normality);
    CHECK(parsed({"complexity"}).experiment == Experiment::Complexity);
    CHECK(parsed({"transmit"}).experiment == Experiment::Transmit);
    CHECK(parsed({"verify"}).experiment == Experiment::Verify);
}

TEST_CASE("cli rejects a non power-of-two size") {
    const auto r = cfrsim::parse_cli({"power-profile", "--n", "500"});
    CHECK(!r.config.has_value());
    CHECK(r.exit_code == 2);
    CHECK(r.message.find("power of two") != std::string::npos);
}

TEST_CASE("cli rejects unknown flags") {
    const auto r = cfrsim::parse_cli({"verify", "--frobnicate"});
    CHECK(!r.config.has_value());
    CHECK(r.exit_code == 2);
}

TEST_CASE("band list accepts the N/2 boundary") {
    const auto rc = parsed({"band-accuracy", "--bands", "0,4,8", "--n", "16"});
    CHECK(rc.band_list() == std::vector<std::size_t>{0, 4, 8});

    const auto rc2 = parsed({"band-accuracy", "--bands", "0,4", "--n", "16",
                             "--bands-include-half"});
    CHECK(rc2.band_list() == std::vector<std::size_t>{0, 4, 8});

    const auto bad = cfrsim::parse_cli({"band-accuracy", "--bands", "0,9", "--n", "16"});
    CHECK(!bad.config.has_value());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cyclic prefix defaults to the scaled LTE normal length") {
    CHECK(cfrsim::lte_normal_cp(512) == 36);
    CHECK(cfrsim::lte_normal_cp(128) == 9);
    CHECK(cfrsim::lte_normal_cp(1024) == 72);
    CHECK(parsed({"power-profile", "--n", "512"}).cp() == 36);
    CHECK(parsed({"power-profile", "--n", "512", "--cp", "20"}).cp() == 20);

    const auto bad = cfrsim::parse_cli({"power-profile", "--cp", "sometimes"});
    CHECK(!bad.config.has_value());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("verify defaults to a small size") {
    CHECK(parsed({"verify"}).fft_size == 16);
    CHECK(parsed({"verify", "--n", "32"}).fft_size == 32);
}

TEST_CASE("config files use per-experiment sections, flags win, unknown keys fail") {
    const std::string path = "/tmp/cfrsim_test_cfg.ini";
    {
        std::ofstream out(path);
        out << "[verify]\nn=32\nseed=4\n";
    }
    const auto rc = parsed({"verify", "--config", path});
    CHECK(rc.fft_size == 32);
    CHECK(rc.seed == 4);

    const auto overridden = parsed({"verify", "--config", path, "--n", "16"});
    CHECK(overridden.fft_size == 16);
    CHECK(overridden.seed == 4);

    {
        std::ofstream out(path);
        out << "[verify]\nfrobnicate=1\n";
    }
    const auto bad = cfrsim::parse_cli({"verify", "--config", path});
    CHECK(!bad.config.has_value());
    CHECK(bad.exit_code == 2);
}

TEST_CASE("help exits cleanly") {
    const auto r = cfrsim::parse_cli({"--help"});
    CHECK(!r.config.has_value());
    CHECK(r.exit_code == 0);
    CHECK(!r.message.empty());
}

TEST_CASE("snr and noiseless are mutually exclusive") {
    const auto r = cfrsim::parse_cli({"transmit", "--snr", "20", "--noiseless"});
    CHECK(!r.config.has_value());
    CHECK(r.exit_code == 2);
    CHECK(parsed({"transmit", "--snr", "20"}).snr_db.has_value());
    CHECK(!parsed({"transmit"}).snr_db.has_value());
}

TEST_CASE("verification checks pass at small sizes") {
    RunConfig rc;
    rc.experiment = Experiment::Verify;
    rc.fft_size = 16;
    rc.seed = 1;
    const auto report = cfrsim::run(rc);
    CHECK(report.ok);
    for (const auto& row : report.tables.at(0).rows)
        CHECK(row.back() == "pass");
}

TEST_CASE("reports are byte-identical across reruns and thread counts") {
    RunConfig rc;
    rc.experiment = Experiment::BandAccuracy;
    rc.fft_size = 64;
    rc.cp_len = 4;
    rc.pdp = "cost259-ht";
    rc.sample_interval = 8e-7; // delay spread must stay inside N = 64
    rc.symbols = 50;
    rc.realizations = 6;
    rc.bands = {0, 2, 8};
    rc.seed = 99;

    rc.threads = 1;
    const std::string a = cfrsim::to_csv(cfrsim::run(rc));
    rc.threads = 8;
    const std::string b = cfrsim::to_csv(cfrsim::run(rc));
    rc.threads = 8;
    const std::string c = cfrsim::to_csv(cfrsim::run(rc));
    CHECK(a == b);
    CHECK(b == c);

    RunConfig nm;
    nm.experiment = Experiment::Normality;
    nm.fft_size = 32;
    nm.cp_len = 2;
    nm.sample_interval = 1e-6;
    nm.realizations = 6;
    nm.jb_samples = 2000;
    nm.seed = 5;
    nm.threads = 1;
    const std::string na = cfrsim::to_csv(cfrsim::run(nm));
    nm.threads = 8;
    const std::string nb = cfrsim::to_csv(cfrsim::run(nm));
    CHECK(na == nb);
}

TEST_CASE("normality report flags the degenerate full-band row") {
    RunConfig rc;
    rc.experiment = Experiment::Normality;
    rc.fft_size = 32;
    rc.cp_len = 2;
    rc.sample_interval = 1e-6;
    rc.realizations = 3;
    rc.jb_samples = 500;
    rc.bands = {0, 8, 16};
    rc.seed = 3;
    const auto report = cfrsim::run(rc);
    const auto& rows = report.tables.at(0).rows;
    CHECK(rows.back().at(1) == "16");
    CHECK(rows.back().back() == "degenerate");
    CHECK(rows.front().back() == "ok");
}

TEST_CASE("complexity report finds the crossovers") {
    RunConfig rc;
    rc.experiment = Experiment::Complexity;
    rc.fft_size = 512;
    rc.bands = {16};
    rc.max_users = 16;
    const auto report = cfrsim::run(rc);
    REQUIRE(report.tables.size() == 2);
    const auto& cross = report.tables.at(1).rows;
    CHECK(cross.at(0).at(0) == "cfr_reused");
    CHECK(cross.at(0).at(1) != "none");
    CHECK(cross.at(1).at(1) != "none");
    const std::size_t reused = std::stoul(cross.at(0).at(1));
    const std::size_t recomputed = std::stoul(cross.at(1).at(1));
    CHECK(recomputed > reused);
}

TEST_CASE("transmit report ties the two models together") {
    RunConfig rc;
    rc.experiment = Experiment::Transmit;
    rc.fft_size = 64;
    rc.cp_len = 4;
    rc.sample_interval = 8e-7;
    rc.symbols = 30;
    rc.bands = {0, 4, 32};
    rc.seed = 17;
    const auto report = cfrsim::run(rc);
    double max_err = -1.0;
    for (const auto& row : report.tables.at(0).rows)
        if (row.at(0) == "time_freq_max_abs_err")
            max_err = std::stod(row.at(1));
    CHECK(max_err >= 0.0);
    CHECK(max_err < 1e-9);
    // the full-band row reproduces the complete response up to transform
    // round-off, far beyond any physical accuracy figure
    CHECK(std::stod(report.tables.at(1).rows.back().at(1)) > 250.0);
}

TEST_CASE("invalid configurations are rejected by run") {
    RunConfig rc;
    rc.experiment = Experiment::PowerProfile;
    rc.fft_size = 500;
    CHECK_THROWS_AS(cfrsim::run(rc), cfrsim::ConfigError);

    rc.fft_size = 64;
    rc.bands = {64};
    CHECK_THROWS_AS(cfrsim::run(rc), cfrsim::ConfigError);
}

TEST_CASE("report formats render both ways") {
    RunConfig rc;
    rc.experiment = Experiment::Complexity;
    rc.fft_size = 128;
    rc.max_users = 3;
    const auto report = cfrsim::run(rc);
    const std::string csv = cfrsim::to_csv(report);
    CHECK(csv.find("# table: mac_per_symbol") != std::string::npos);
    CHECK(csv.find("users,mac_tdl,mac_freq_reuse,mac_freq_recompute") != std::string::npos);
    const std::string json = cfrsim::to_json(report);
    CHECK(json.find("\"experiment\": \"complexity\"") != std::string::npos);
}
