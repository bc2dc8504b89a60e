// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <string>
#include <vector>

namespace cfrsim {

/// Power delay profile as stored on disk: tap delays in seconds and average
/// gains in dB, plus a display name.
struct PdpSpec {
    struct Tap {
        double delay_s;
        double gain_db;
    };
    std::string name;
    std::vector<Tap> taps;
};

/// Power delay profile quantized onto the sample grid: integer-sample delays
/// with linear average powers. Taps that round to the same sample are merged
/// by adding their powers.
struct PowerDelayProfile {
    struct Tap {
        std::size_t delay; ///< samples
        double gain;       ///< linear average power, > 0
    };
    std::string name;
    std::vector<Tap> taps;

    std::size_t tap_count() const { return taps.size(); }
    std::size_t delay_spread() const { return taps.empty() ? 0 : taps.back().delay; }
    double total_power() const;

    void validate() const; ///< strictly increasing delays, positive gains
};

/// Parse a profile file. Lines hold "delay_seconds gain_db"; '#' starts a
/// comment; "# name: <label>" sets the profile name.
PdpSpec load_pdp_file(const std::string& path);

/// Resolve a profile argument: an existing file path is loaded directly;
/// otherwise the name (with ".pdp" appended when missing) is searched in
/// $CFRSIM_PDP_DIR, the bundled data directory, ./data and the working
/// directory.
PdpSpec resolve_pdp(const std::string& name_or_path);

/// Round tap delays to the nearest sample at the given rate and convert
/// gains to linear power.
PowerDelayProfile quantize_pdp(const PdpSpec& spec, double sample_rate_hz);

} // namespace cfrsim
