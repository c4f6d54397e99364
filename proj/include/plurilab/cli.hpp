#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "plurilab/config.hpp"

namespace plurilab::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { ok = 0, config_error = 2, computation_error = 3 };

struct RunOptions {
    std::uint64_t seed = 0;
    bool override_degree_cap = false;
};

struct RunResult {
    int exit_code = ok;
    json report;
};

/// Subcommand names accepted by run().
const std::vector<std::string>& subcommands();

/// Runs one experiment. Never throws: errors come back as an error report
/// with exit code config_error or computation_error.
RunResult run(const std::string& subcommand, const Config& config, const RunOptions& opt = {});

/// Serialized report, newline terminated.
std::string dump(const json& report);

/// Entry point of the command-line tool.
int main(int argc, char** argv);

}  // namespace plurilab::cli
