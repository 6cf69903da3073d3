#pragma once

#include <string>

#include "ntdlab/config.hpp"

namespace ntdlab {

struct RunOptions {
    std::string output_override;  // empty = use config output_dir
    int threads = 1;
    bool verbose = false;
};

/// Runs one experiment to completion, writing per-kind CSV tables plus a
/// manifest (config hash, version, wall time) into the output directory.
/// Partial outputs are removed when the run aborts. Deterministic given the
/// config seed. Returns the output directory used.
/// Throws ConfigError on validation failure, NumericalError on solver/eigen
/// failure (with the failing stage named).
std::string run_experiment(const ExperimentConfig& config, const std::string& config_text,
                           const RunOptions& options);

constexpr const char* kArtifactVersion = "0.1.0";

}  // namespace ntdlab
