// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfrsim/channel.hpp"
#include "cfrsim/pdp.hpp"
#include "cfrsim/report.hpp"

namespace cfrsim {

/// Configuration problem; the CLI maps it to exit code 2.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Experiment { PowerProfile, BandAccuracy, Normality, Complexity, Transmit, Verify };

const char* experiment_name(Experiment e);

struct RunConfig {
    Experiment experiment = Experiment::Verify;
    std::size_t fft_size = 512;
    std::optional<std::size_t> cp_len;          ///< default: scaled LTE normal prefix
    std::optional<double> sample_interval;      ///< default: 1 / (15 kHz * N)
    std::string pdp = "cost259-ht";
    double doppler_hz = 5.0;
    std::optional<double> snr_db;               ///< nullopt = noiseless
    std::vector<std::size_t> bands;             ///< empty = experiment default
    std::size_t symbols = 10000;
    std::size_t realizations = 20;
    std::size_t jb_samples = 100000;            ///< residual sample size per realization
    std::optional<std::size_t> jb_row;          ///< default: N/2
    std::size_t max_users = 16;
    std::uint64_t seed = 1;
    std::size_t threads = 0;                    ///< 0 = hardware concurrency
    std::string out = "-";
    bool json = false;

    std::size_t cp() const;
    double ts() const;
    double noise_variance() const; ///< 0 when noiseless
    std::vector<std::size_t> band_list() const;
    OfdmConfig ofdm() const;

    void validate() const;
};

/// Cyclic prefix of the LTE normal mode scaled to the FFT size
/// (144 * N / 2048 samples, rounded).
std::size_t lte_normal_cp(std::size_t fft_size);

ExperimentReport run_power_profile(const RunConfig& rc);
ExperimentReport run_band_accuracy(const RunConfig& rc);
ExperimentReport run_normality(const RunConfig& rc);
ExperimentReport run_complexity(const RunConfig& rc);
ExperimentReport run_transmit(const RunConfig& rc);
ExperimentReport run_verify(const RunConfig& rc);

/// Dispatch on rc.experiment. Throws ConfigError for invalid configurations
/// and std::runtime_error for numeric failures.
ExperimentReport run(const RunConfig& rc);

/// Deterministic parallel loop: work items are indexed, results must be
/// written to per-index slots by the body; any reduction happens afterwards
/// in index order so the thread count never changes emitted numbers.
void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

} // namespace cfrsim
