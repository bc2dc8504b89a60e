// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/pdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace cfrsim {

namespace fs = std::filesystem;

double PowerDelayProfile::total_power() const {
    double s = 0.0;
    for (const Tap& t : taps)
        s += t.gain;
    return s;
}

void PowerDelayProfile::validate() const {
    if (taps.empty())
        throw std::invalid_argument("PowerDelayProfile: profile has no taps");
    for (std::size_t i = 0; i < taps.size(); ++i) {
        if (!(taps[i].gain > 0.0))
            throw std::invalid_argument("PowerDelayProfile: tap gains must be positive");
        if (i > 0 && taps[i].delay <= taps[i - 1].delay)
            throw std::invalid_argument("PowerDelayProfile: tap delays must be strictly increasing");
    }
}

PdpSpec load_pdp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open power delay profile file: " + path);

    PdpSpec spec;
    spec.name = fs::path(path).stem().string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            std::string comment = line.substr(hash + 1);
            const auto key = comment.find("name:");
            if (key != std::string::npos) {
                std::string value = comment.substr(key + 5);
                const auto first = value.find_first_not_of(" \t");
                const auto last = value.find_last_not_of(" \t\r");
                if (first != std::string::npos)
                    spec.name = value.substr(first, last - first + 1);
            }
            line = line.substr(0, hash);
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream iss(line);
        double delay_s = 0.0;
        double gain_db = 0.0;
        if (!(iss >> delay_s))
            continue; // blank or comment-only line
        if (!(iss >> gain_db))
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected \"delay_seconds gain_db\"");
        if (delay_s < 0.0)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": tap delay must be non-negative");
        spec.taps.push_back({delay_s, gain_db});
    }
    if (spec.taps.empty())
        throw std::invalid_argument("power delay profile file has no taps: " + path);
    return spec;
}

PdpSpec resolve_pdp(const std::string& name_or_path) {
    if (fs::exists(name_or_path) && fs::is_regular_file(name_or_path))
        return load_pdp_file(name_or_path);

    std::string file = name_or_path;
    if (file.find(".pdp") == std::string::npos)
        file += ".pdp";

    std::vector<std::string> dirs;
    if (const char* env = std::getenv("CFRSIM_PDP_DIR"))
        dirs.emplace_back(env);
#ifdef CFRSIM_DATA_DIR
    dirs.emplace_back(CFRSIM_DATA_DIR);
#endif
    dirs.emplace_back("data");
    dirs.emplace_back(".");

    for (const std::string& dir : dirs) {
        const fs::path candidate = fs::path(dir) / file;
        if (fs::exists(candidate) && fs::is_regular_file(candidate))
            return load_pdp_file(candidate.string());
    }
    throw std::invalid_argument("power delay profile not found: " + name_or_path +
                                " (set CFRSIM_PDP_DIR or pass a file path)");
}

PowerDelayProfile quantize_pdp(const PdpSpec& spec, double sample_rate_hz) {
    if (!(sample_rate_hz > 0.0))
        throw std::invalid_argument("quantize_pdp: sample rate must be positive");
    // taps falling onto the same sample merge with added powers
    std::map<std::size_t, double> merged;
    for (const PdpSpec::Tap& t : spec.taps) {
        const auto sample = std::size_t(std::llround(t.delay_s * sample_rate_hz));
        merged[sample] += std::pow(10.0, t.gain_db / 10.0);
    }
    PowerDelayProfile pdp;
    pdp.name = spec.name;
    pdp.taps.reserve(merged.size());
    for (const auto& [delay, gain] : merged)
        pdp.taps.push_back({delay, gain});
    pdp.validate();
    return pdp;
}

} // namespace cfrsim
