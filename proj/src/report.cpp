// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#include "cfrsim/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace cfrsim {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string format_value(std::uint64_t v) { return std::to_string(v); }

std::string to_csv(const ExperimentReport& report) {
    std::ostringstream out;
    out << "# cfrsim " << kVersion << "\n";
    out << "# experiment=" << report.experiment << "\n";
    for (const auto& [key, value] : report.config_echo)
        out << "# " << key << "=" << value << "\n";
    for (const std::string& w : report.warnings)
        out << "# warning: " << w << "\n";
    for (const Table& table : report.tables) {
        out << "\n# table: " << table.name << "\n";
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            out << (c ? "," : "") << table.columns[c];
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                out << (c ? "," : "") << row[c];
            out << "\n";
        }
    }
    return out.str();
}

std::string to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["tool"] = "cfrsim";
    j["version"] = kVersion;
    j["experiment"] = report.experiment;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.config_echo)
        cfg[key] = value;
    j["config"] = cfg;
    j["ok"] = report.ok;
    nlohmann::ordered_json tables = nlohmann::ordered_json::object();
    for (const Table& table : report.tables) {
        nlohmann::ordered_json t;
        t["columns"] = table.columns;
        t["rows"] = table.rows;
        tables[table.name] = t;
    }
    j["tables"] = tables;
    j["warnings"] = report.warnings;
    // informational only; excluded from the determinism contract
    j["wall_ms"] = report.wall_ms;
    return j.dump(2) + "\n";
}

void emit_report(const ExperimentReport& report, const std::string& path, bool json) {
    const std::string body = json ? to_json(report) : to_csv(report);
    if (path.empty() || path == "-") {
        std::cout << body;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open output file: " + path);
    out << body;
}

} // namespace cfrsim
