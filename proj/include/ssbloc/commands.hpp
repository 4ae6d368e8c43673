#pragma once

#include <optional>
#include <string>

namespace ssbloc {

/// @brief Options shared by every CLI subcommand.
struct CliOptions {
    std::string config_path;
    std::string out_dir = ".";
    unsigned jobs = 1;
    std::optional<std::uint64_t> seed;  ///< overrides the scenario seed
};

int cmd_run(const CliOptions& opts);
int cmd_sweep(const CliOptions& opts);
int cmd_compare(const CliOptions& opts);
int cmd_calibrate(const CliOptions& opts);

/// Runs the named subcommand and maps exceptions to process exit codes:
/// 0 success, 2 configuration error, 3 runtime failure.
int dispatch(const std::string& command, const CliOptions& opts);

}  // namespace ssbloc
