#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ssbloc/sim.hpp"

namespace ssbloc {

/// Raised for malformed config files, unknown keys, or inconsistent values;
/// the CLI maps it to its configuration exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string to_string(AoaAlgorithm alg);
std::string to_string(Regime regime);
AoaAlgorithm parse_algorithm(const std::string& name);
Regime parse_regime(const std::string& name);

struct SweepSpec {
    std::vector<int> mode_ids = {0, 1, 2, 3, 4, 5, 6, 7};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::optional<double> energy_budget_j;
    std::optional<double> error_tolerance_m;
};

struct CompareSpec {
    std::vector<AoaAlgorithm> algorithms = {
        AoaAlgorithm::music, AoaAlgorithm::esprit, AoaAlgorithm::root_music};
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
};

struct CalibrateEntry {
    double total_j = 0.0;
    double period_s = 0.0;
};

/// @brief Parsed scenario file: one structured document with nested sections.
/// Unknown keys anywhere are rejected so typos cannot silently fall back to
/// defaults.
struct FileConfig {
    ScenarioConfig scenario;
    SweepSpec sweep;
    CompareSpec compare;
    std::map<std::string, CalibrateEntry> calibrate;  ///< keyed by algorithm name
};

FileConfig config_from_json(const nlohmann::json& j);
FileConfig load_config(const std::string& path);

/// Effective-configuration echo for run summaries.
nlohmann::json scenario_to_json(const ScenarioConfig& cfg);

}  // namespace ssbloc
