#pragma once

#include <optional>
#include <string>

#include "fockforge/config.hpp"

namespace fockforge {

struct CommandOptions {
    std::optional<std::uint64_t> seed;   // overrides measurement.seed
    std::optional<std::string> format;   // overrides output.format
    bool all = false;                    // measure: run all four schemes
    bool estimate = false;               // measure: eigenvalue estimation
    bool cross_check = false;            // spectrum: print a1 and a2 columns
};

std::string run_spectrum(const ExperimentConfig& cfg, const CommandOptions& opts);
std::string run_evolve(const ExperimentConfig& cfg, const CommandOptions& opts);
std::string run_compare(const ExperimentConfig& cfg, const CommandOptions& opts);
std::string run_measure(const ExperimentConfig& cfg, const CommandOptions& opts);
std::string run_resources(const ExperimentConfig& cfg, const CommandOptions& opts);

/// Dispatch by subcommand name; throws ConfigError for an unknown command.
std::string run_command(const std::string& command, const ExperimentConfig& cfg,
                        const CommandOptions& opts);

}  // namespace fockforge
