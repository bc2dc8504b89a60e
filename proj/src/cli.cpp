// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/cli.hpp"

#include <cstdint>
#include <iostream>

#include "CLI11.hpp"

namespace cfrsim {

namespace {

struct CliState {
    RunConfig rc;
    std::string cp = "normal-lte";
    double sample_interval = 0.0; // 0 = derive from N
    double snr_db = 0.0;
    bool noiseless = false;
    bool snr_given = false;
    std::uint64_t jb_row = 0;
    bool jb_row_given = false;
    bool bands_include_half = false;
    std::string format = "csv";
};

void add_common(CLI::App* cmd, CliState& st) {
    cmd->add_option("--n", st.rc.fft_size, "FFT size (power of two)");
    cmd->add_option("--cp", st.cp,
                    "cyclic prefix length in samples, or 'normal-lte' for 144*N/2048");
    cmd->add_option("--ts", st.sample_interval,
                    "sample interval in seconds (default 1/(15e3*N))");
    cmd->add_option("--pdp", st.rc.pdp, "power delay profile name or file path");
    cmd->add_option("--doppler", st.rc.doppler_hz, "maximum Doppler frequency in Hz");
    auto* snr = cmd->add_option("--snr", st.snr_db, "SNR in dB (noise variance 10^(-snr/10))");
    auto* quiet = cmd->add_flag("--noiseless", st.noiseless, "disable noise (default)");
    snr->excludes(quiet);
    cmd->add_option("--bands", st.rc.bands, "half-bandwidth values b (comma separated)")
        ->delimiter(',');
    cmd->add_flag("--bands-include-half", st.bands_include_half, "append b = N/2 to the band list");
    cmd->add_option("--symbols", st.rc.symbols, "OFDM symbols per realization");
    cmd->add_option("--realizations", st.rc.realizations, "independent channel realizations");
    cmd->add_option("--samples", st.rc.jb_samples, "residual samples per realization (normality)");
    cmd->add_option("--row", st.jb_row, "subcarrier row for the residual test (default N/2)");
    cmd->add_option("--users", st.rc.max_users, "maximum user count (complexity)");
    cmd->add_option("--seed", st.rc.seed, "master seed");
    cmd->add_option("--threads", st.rc.threads, "worker threads (0 = hardware)");
    cmd->add_option("--out", st.rc.out, "output path, '-' for stdout");
    cmd->add_option("--format", st.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

RunConfig finalize(const CliState& st, const CLI::App* cmd) {
    RunConfig rc = st.rc;
    if (cmd->count("--cp") != 0 || st.cp != "normal-lte") {
        if (st.cp == "normal-lte") {
            rc.cp_len.reset();
        } else {
            try {
                std::size_t pos = 0;
                const unsigned long long v = std::stoull(st.cp, &pos);
                if (pos != st.cp.size())
                    throw std::invalid_argument(st.cp);
                rc.cp_len = std::size_t(v);
            } catch (const std::exception&) {
                throw ConfigError("--cp expects a sample count or 'normal-lte', got '" + st.cp +
                                  "'");
            }
        }
    }
    if (cmd->count("--ts") != 0) {
        if (!(st.sample_interval > 0.0))
            throw ConfigError("--ts expects a positive sample interval");
        rc.sample_interval = st.sample_interval;
    }
    if (st.snr_given)
        rc.snr_db = st.snr_db;
    if (st.jb_row_given)
        rc.jb_row = st.jb_row;
    if (st.bands_include_half) {
        rc.bands.push_back(rc.fft_size / 2);
    }
    rc.json = st.format == "json";
    rc.validate();
    return rc;
}

} // namespace

CliResult parse_cli(const std::vector<std::string>& args) {
    CliState st;
    CLI::App app{"cfrsim - frequency-domain OFDM multipath channel simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    // config files use one section per experiment, e.g. "[band-accuracy]\nn=512"
    app.set_config("--config", "", "read options from an INI/TOML file");
    app.allow_config_extras(CLI::config_extras_mode::error);

    CLI::App* power = app.add_subcommand(
        "power-profile", "closed-form interference power vs. subcarrier distance");
    CLI::App* accuracy = app.add_subcommand(
        "band-accuracy", "signal-to-error ratio of the banded interference model");
    CLI::App* normality =
        app.add_subcommand("normality", "Jarque-Bera test of the residual interference");
    CLI::App* complexity =
        app.add_subcommand("complexity", "MAC cost of frequency-domain vs. TDL simulation");
    CLI::App* transmit =
        app.add_subcommand("transmit", "run a transmission through both channel models");
    CLI::App* verify = app.add_subcommand("verify", "run the numeric identity checks");

    for (CLI::App* cmd : {power, accuracy, normality, complexity, transmit, verify})
        add_common(cmd, st);

    power->callback([&]() { st.rc.experiment = Experiment::PowerProfile; });
    accuracy->callback([&]() {
        st.rc.experiment = Experiment::BandAccuracy;
        // one continuously evolving channel unless asked otherwise
        if (accuracy->count("--realizations") == 0)
            st.rc.realizations = 1;
    });
    normality->callback([&]() { st.rc.experiment = Experiment::Normality; });
    complexity->callback([&]() { st.rc.experiment = Experiment::Complexity; });
    transmit->callback([&]() {
        st.rc.experiment = Experiment::Transmit;
        if (transmit->count("--realizations") == 0)
            st.rc.realizations = 1;
    });
    verify->callback([&]() {
        st.rc.experiment = Experiment::Verify;
        if (verify->count("--n") == 0)
            st.rc.fft_size = 16;
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    CliResult result;
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        result.exit_code = 0;
        result.message = app.help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = 2;
        result.message = std::string("configuration error: ") + e.what();
        return result;
    }

    const CLI::App* active = app.get_subcommands().front();
    try {
        CliState finalized = st;
        finalized.snr_given = active->count("--snr") != 0;
        finalized.jb_row_given = active->count("--row") != 0;
        result.config = finalize(finalized, active);
    } catch (const ConfigError& e) {
        result.exit_code = 2;
        result.message = std::string("configuration error: ") + e.what();
    }
    return result;
}

int cli_main(const std::vector<std::string>& args) {
    CliResult parsed = parse_cli(args);
    if (!parsed.config) {
        if (parsed.exit_code == 0)
            std::cout << parsed.message;
        else
            std::cerr << parsed.message << "\n";
        return parsed.exit_code;
    }
    try {
        const ExperimentReport report = run(*parsed.config);
        emit_report(report, parsed.config->out, parsed.config->json);
        if (!report.ok) {
            std::cerr << "verification failed\n";
            return 3;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

} // namespace cfrsim
