#pragma once

// Command layer behind the `egain` CLI. Each command returns the full report
// text plus an exit code; the CLI only parses flags and writes the text.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "egain/symplectic.hpp"

namespace egain::report {

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kInadmissible = 2,
    kHypothesisViolation = 3,
    kUnreliable = 4,
};

struct RunConfig {
    std::string command;

    // Channel: a preset name or a {s, K, mu} file.
    std::string preset;
    double k = 1.0;
    double noise = 0.3;
    std::string channel_file;
    // Optional classical noise appended after the preset (fock prop3 campaigns).
    double extra_noise = 0.0;

    std::string epsilon_file;
    std::string matrix_file;

    double beta_min = 1e-6;
    double beta_max = 1.0;
    int beta_points = 25;
    bool adaptive = true;

    int dim = 60;
    int trials = 100;
    std::string check = "prop1";
    std::string states = "random";
    bool dump_states = false;

    unsigned k_max = 14;
    std::vector<std::uint64_t> rows{1, 5, 100};

    std::uint64_t seed = 0;
    std::string out;
    double tol = kDefaultTolerance;
};

struct CommandResult {
    std::string output;
    int exit_code = kSuccess;
    // Human-readable diagnostic for stderr; empty on success.
    std::string message;
};

// Tolerance from EGAIN_TOL when set and parseable, otherwise the library default.
double default_tolerance();

CommandResult cmd_gain(const RunConfig &config);
CommandResult cmd_sweep(const RunConfig &config);
CommandResult cmd_fock(const RunConfig &config);
CommandResult cmd_classical(const RunConfig &config);
CommandResult cmd_williamson(const RunConfig &config);

// Dispatches on config.command and maps library exceptions to exit codes.
CommandResult run(const RunConfig &config);

} // namespace egain::report
