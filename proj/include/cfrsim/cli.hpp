// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 cfrsim contributors

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cfrsim/experiments.hpp"

namespace cfrsim {

/// Outcome of command-line parsing. When `config` is empty the process
/// should terminate with `exit_code` after printing `message` (help text on
/// stdout, errors on stderr).
struct CliResult {
    std::optional<RunConfig> config;
    int exit_code = 0;
    std::string message;
};

/// Parse argv (without the program name). Flags override config-file values;
/// unknown keys are rejected. Exit codes: 0 ok/help, 2 configuration error.
CliResult parse_cli(const std::vector<std::string>& args);

/// Full CLI entry point: parse, run, emit. Returns the process exit code
/// (0 ok, 2 configuration error, 3 numeric/runtime failure).
int cli_main(const std::vector<std::string>& args);

} // namespace cfrsim
