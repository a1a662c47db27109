#pragma once

#include "epidyn/params.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace epidyn {

/// Parsed run configuration: a single JSON document with model, params,
/// command, and options blocks. --set overrides land in params before
/// validation.
struct RunConfig {
    std::string model;      ///< "serirs" or "sverirs"
    nlohmann::json params;  ///< spelled-out parameter names -> values
    std::string command;    ///< echoed into reports
    nlohmann::json options; ///< command-specific options
};

RunConfig config_from_json(const nlohmann::json& doc,
                           const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

/// Converts and validates the params block. Throws ConfigError listing every
/// violated constraint.
ModelParams params_from_config(const RunConfig& cfg);

nlohmann::json config_echo(const RunConfig& cfg, const std::string& command);

/// Command bodies. Each returns the JSON report (with the config echoed
/// under "config") and writes a short human summary to the stream.
nlohmann::json run_r0(const RunConfig& cfg, std::ostream& summary);
nlohmann::json run_equilibria(const RunConfig& cfg, std::ostream& summary);
nlohmann::json run_stability(const RunConfig& cfg, std::ostream& summary);

struct SimulateOutput {
    nlohmann::json report;
    std::string trajectory_csv;
    std::string distance_csv; ///< empty unless a distance target was resolved
};
SimulateOutput run_simulate(const RunConfig& cfg, std::ostream& summary);

struct SweepOutput {
    nlohmann::json report;
    std::string csv;
};
SweepOutput run_sweep_cmd(const RunConfig& cfg, std::ostream& summary);

struct OptimizeOutput {
    nlohmann::json report;
    std::string schedule_csv;
};
OptimizeOutput run_optimize(const RunConfig& cfg, std::ostream& summary);

/// Re-runs the bundled worked examples and diffs them against their stored
/// expected values; one line per check. Returns the number of failures.
int run_reproduce(std::ostream& out);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 2 config/usage error, 3 numerical failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

} // namespace epidyn
