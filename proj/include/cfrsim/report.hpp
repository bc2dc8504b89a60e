// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace cfrsim {

inline constexpr const char* kVersion = "0.1.0";

/// One result table. Cells are pre-formatted strings so that emission is
/// byte-deterministic regardless of output format or thread count.
struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

/// Structured experiment result: the echoed configuration (only parameters
/// that affect the numbers; execution knobs like thread count are excluded
/// so reruns compare byte-identical), the result tables and any warnings.
struct ExperimentReport {
    std::string experiment;
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<Table> tables;
    std::vector<std::string> warnings;
    bool ok = true;        ///< false when a verification check failed
    double wall_ms = 0.0;  ///< informational; JSON only, never in CSV
};

/// Fixed-format floating point rendering ("%.12g"), shared by every emitter.
std::string format_value(double v);
std::string format_value(std::uint64_t v);

std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

/// Writes to the path, or stdout when path is "-".
void emit_report(const ExperimentReport& report, const std::string& path, bool json);

} // namespace cfrsim
