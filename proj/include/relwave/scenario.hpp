#pragma once
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace relwave {

/// Aggregated configuration problems; nothing is written when this fires.
struct ValidationError : std::runtime_error {
    std::vector<std::string> problems;
    explicit ValidationError(std::vector<std::string> problems_);
};

struct ArtifactEntry {
    std::string path;      // relative to the output directory
    std::uint64_t bytes = 0;
    std::string fnv1a64;   // content hash, hex
};

struct Manifest {
    std::string command;
    nlohmann::json resolved_config;  // fully-resolved copy; re-running it reproduces the run
    std::vector<ArtifactEntry> artifacts;
    nlohmann::json summary;

    nlohmann::json to_json() const;
};

struct ScenarioOptions {
    std::filesystem::path out_dir = "out";
    std::string format = "csv";  // csv | json, for single-record reports
    bool plot = false;
    bool strict = true;
};

/// Validates the configuration for `command`, runs it, writes the artifacts
/// plus manifest.json under out_dir, and returns the manifest. Commands:
/// trajectory, boost, wave, wigner, gas, fit, hydrogen. Throws
/// ValidationError before anything is written for bad configurations;
/// numerical failures propagate as std::runtime_error / std::domain_error.
Manifest run_scenario(const std::string& command, const nlohmann::json& config,
                      const ScenarioOptions& options);

/// Default configuration with every knob at its model-unit value.
nlohmann::json default_config();

}  // namespace relwave
