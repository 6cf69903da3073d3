#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ntdlab/mesh.hpp"

namespace ntdlab {

enum class ExperimentKind {
    NtdConvergence,
    MonotonicityIdentity,
    LocalizedSweep,
    PositivityTest,
    InclusionSweep,
};

std::string to_string(ExperimentKind kind);

struct NamedRegion {
    std::string name;
    Region region;
};

struct PotentialOverride {
    std::string region;  // name of a declared region
    double value = 0.0;
};

/// Parsed experiment configuration. Flat "key = value" lines plus repeatable
/// region blocks; see the README for the grammar.
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PositivityTest;

    std::vector<int> n_values;   // mesh subdivisions; most kinds take one
    unsigned gamma_sides = 0;    // BoundarySelector::Side mask, 0 = full boundary
    double q1 = 1.0;
    double q2 = 1.0;
    std::vector<PotentialOverride> q1_overrides;
    std::vector<PotentialOverride> q2_overrides;
    std::vector<NamedRegion> regions;

    std::vector<double> deltas;  // localized sweep schedule
    double contrast = 1.0;       // tau_c
    double eig_tol = 0.0;        // 0 = scaled default
    std::uint64_t seed = 0;
    std::string output_dir = "out";

    int flux_k = 1;              // cos(k pi x) flux for ntd-convergence
    int instances = 100;         // randomized-instance count
    double q_min = 0.5;          // random potential range
    double q_max = 5.0;
    int grid_nx = 8;             // inclusion-sweep test grid
    int grid_ny = 8;
    double sweep_radius = 0.06;
    bool dump_fields = false;
};

/// Throws ConfigError with a field-level message on any syntax or value error.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

/// Semantic checks that do not need a mesh: positive potentials, required
/// regions present per experiment kind, delta schedule shape.
void validate_config(const ExperimentConfig& config);

const NamedRegion* find_region(const ExperimentConfig& config, const std::string& name);

}  // namespace ntdlab
