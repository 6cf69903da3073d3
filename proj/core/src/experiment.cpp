#include "ntdlab/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ntdlab/detection.hpp"
#include "ntdlab/io.hpp"
#include "ntdlab/localized.hpp"
#include "ntdlab/monotonicity.hpp"

namespace fs = std::filesystem;

namespace ntdlab {

namespace {

BoundarySelector gamma_selector(const ExperimentConfig& config) {
    return config.gamma_sides == 0 ? BoundarySelector::all()
                                   : BoundarySelector::sides(config.gamma_sides);
}

Potential make_potential(const Mesh& mesh, double base,
                         const std::vector<PotentialOverride>& overrides,
                         const ExperimentConfig& config, const char* which) {
    Potential q = Potential::constant(mesh, base);
    for (const auto& o : overrides) {
        const NamedRegion* named = find_region(config, o.region);
        const auto tris = resolve_region(mesh, named->region);
        if (tris.empty())
            throw ConfigError(std::string(which) + " override region '" + o.region +
                              "' resolves to no triangles on this mesh");
        q.set_triangles(tris, o.value);
    }
    return q;
}

std::vector<int> resolve_named(const Mesh& mesh, const ExperimentConfig& config,
                               const char* name) {
    const auto tris = resolve_region(mesh, find_region(config, name)->region);
    if (tris.empty())
        throw ConfigError(std::string("region ") + name + " resolves to no triangles on this mesh");
    return tris;
}

// Keeps track of written artifacts so an aborted run leaves nothing behind.
class OutputDir {
  public:
    explicit OutputDir(const std::string& dir) : dir_(dir) { fs::create_directories(dir_); }

    std::ofstream open(const std::string& name) {
        const fs::path path = dir_ / name;
        std::ofstream out(path);
        if (!out) throw NumericalError("cannot open output file " + path.string());
        written_.push_back(path);
        return out;
    }

    void discard_all() {
        for (const auto& path : written_) {
            std::error_code ec;
            fs::remove(path, ec);
        }
    }

    const fs::path& dir() const { return dir_; }

  private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

void run_ntd_convergence(const ExperimentConfig& config, const RunOptions& options,
                         OutputDir& out) {
    auto csv_file = out.open("ntd_convergence.csv");
    CsvWriter csv(csv_file, {"n", "k", "rayleigh", "reference", "abs_error"});
    const int k = config.flux_k;
    const double mu = std::sqrt(k * k * M_PI * M_PI + 1.0);
    const double reference = 1.0 / (mu * std::tanh(mu));

    for (int n : config.n_values) {
        const Mesh mesh = build_unit_square_mesh(n);
        const GammaPatch patch = build_gamma_patch(mesh, gamma_selector(config));
        const Potential q = make_potential(mesh, config.q1, config.q1_overrides, config, "q1");
        const NtdMatrix ntd = ntd_matrix(mesh, patch, q, options.threads);

        Eigen::VectorXd g(patch.size());
        for (int i = 0; i < patch.size(); ++i)
            g[i] = std::cos(k * M_PI * mesh.nodes[static_cast<size_t>(patch.nodes[static_cast<size_t>(i)])].x);
        const double rayleigh =
            g.dot(patch.mass * (ntd.values * g)) / g.dot(patch.mass * g);
        csv.row({CsvWriter::field(n), CsvWriter::field(k), CsvWriter::field(rayleigh),
                 CsvWriter::field(reference), CsvWriter::field(std::abs(rayleigh - reference))});
        if (options.verbose)
            std::cerr << "n=" << n << " rayleigh=" << rayleigh << " ref=" << reference << "\n";
    }
}

void run_monotonicity_identity(const ExperimentConfig& config, const RunOptions& options,
                               OutputDir& out) {
    auto csv_file = out.open("monotonicity.csv");
    CsvWriter csv(csv_file, {"seed", "instance", "n", "q_descriptor", "lhs", "rhs", "bound", "residual"});

    const int n = config.n_values.front();
    const Mesh mesh = build_unit_square_mesh(n);
    const GammaPatch patch = build_gamma_patch(mesh, gamma_selector(config));
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> q_dist(config.q_min, config.q_max);
    std::uniform_real_distribution<double> g_dist(-1.0, 1.0);
    std::ostringstream desc;
    desc << "pc[" << config.q_min << "," << config.q_max << "]";

    for (int i = 0; i < config.instances; ++i) {
        std::vector<double> v1(static_cast<size_t>(mesh.triangle_count()));
        std::vector<double> v2(v1.size());
        for (auto& v : v1) v = q_dist(rng);
        for (auto& v : v2) v = q_dist(rng);
        Eigen::VectorXd g(patch.size());
        for (int j = 0; j < patch.size(); ++j) g[j] = g_dist(rng);

        const IdentityResult r = monotonicity_identity_residual(
            mesh, patch, Potential(mesh, v1), Potential(mesh, v2), g);
        csv.row({CsvWriter::field(config.seed), CsvWriter::field(i), CsvWriter::field(n),
                 CsvWriter::field(desc.str()), CsvWriter::field(r.lhs), CsvWriter::field(r.rhs),
                 CsvWriter::field(r.bound), CsvWriter::field(r.residual)});
        if (options.verbose && (i + 1) % 25 == 0)
            std::cerr << "instance " << (i + 1) << "/" << config.instances << "\n";
    }
}

void run_positivity_test(const ExperimentConfig& config, const RunOptions& options, OutputDir& out) {
    const int n = config.n_values.front();
    const Mesh mesh = build_unit_square_mesh(n);
    const GammaPatch patch = build_gamma_patch(mesh, gamma_selector(config));
    const Potential q1 = make_potential(mesh, config.q1, config.q1_overrides, config, "q1");
    const Potential q2 = make_potential(mesh, config.q2, config.q2_overrides, config, "q2");

    const NtdMatrix l1 = ntd_matrix(mesh, patch, q1, options.threads);
    const NtdMatrix l2 = ntd_matrix(mesh, patch, q2, options.threads);
    const SpectrumReport report = difference_spectrum(l1, l2, patch, config.eig_tol);

    auto csv_file = out.open("spectrum.csv");
    CsvWriter csv(csv_file, {"index", "eigenvalue"});
    for (Eigen::Index i = 0; i < report.eigenvalues.size(); ++i)
        csv.row({CsvWriter::field(static_cast<int>(i)), CsvWriter::field(report.eigenvalues[i])});

    auto verdict = out.open("verdict.txt");
    verdict << (report.has_positive ? "true" : "false") << "\n";
    if (options.verbose)
        std::cerr << "max eigenvalue " << report.max_eigenvalue << " tol " << report.tol << "\n";
}

void run_localized_sweep(const ExperimentConfig& config, const RunOptions& options,
                         OutputDir& out) {
    const int n = config.n_values.front();
    const Mesh mesh = build_unit_square_mesh(n);
    const GammaPatch patch = build_gamma_patch(mesh, gamma_selector(config));
    const Potential q1 = make_potential(mesh, config.q1, config.q1_overrides, config, "q1");
    const Potential q2 = make_potential(mesh, config.q2, config.q2_overrides, config, "q2");

    const auto ball = resolve_named(mesh, config, "B");
    const auto neighborhood = resolve_named(mesh, config, "V");
    const auto outside = complement_triangles(mesh, neighborhood);

    const NtdSolver solver(mesh, patch, q1);
    const Eigen::MatrixXd basis = solver.basis_solutions(options.threads);
    const auto gram_b = build_gram(mesh, patch, q1, q2, ball, basis);
    const auto gram_out = build_gram(mesh, patch, q1, q2, outside, basis);
    const auto steps = localized_sequence(gram_b, gram_out, patch.mass, config.deltas);

    auto csv_file = out.open("localized.csv");
    CsvWriter csv(csv_file, {"delta", "ratio", "norm_b", "norm_out", "eigenvalue"});
    for (const auto& step : steps) {
        csv.row({CsvWriter::field(step.delta),
                 std::isinf(step.ratio) ? "inf" : CsvWriter::field(step.ratio),
                 CsvWriter::field(step.norm_b), CsvWriter::field(step.norm_out),
                 CsvWriter::field(step.eigenvalue)});
        if (options.verbose)
            std::cerr << "delta=" << step.delta << " ratio=" << step.ratio << "\n";
    }

    if (config.dump_fields && !steps.empty()) {
        const NodalField u = solver.solve_flux(steps.back().g);
        auto field_file = out.open("field_final.txt");
        export_field(field_file, u);
    }
}

void run_inclusion_sweep(const ExperimentConfig& config, const RunOptions& options,
                         OutputDir& out) {
    const int n = config.n_values.front();
    const Mesh mesh = build_unit_square_mesh(n);
    const GammaPatch patch = build_gamma_patch(mesh, gamma_selector(config));
    const Potential q_ref = make_potential(mesh, config.q1, config.q1_overrides, config, "q1");

    // measured data: reference potential perturbed by contrast on the true region
    const auto true_region = resolve_named(mesh, config, "D");
    std::vector<double> values = q_ref.values();
    for (int t : true_region) values[static_cast<size_t>(t)] += config.contrast;
    const NtdMatrix measured = ntd_matrix(mesh, patch, Potential(mesh, values), options.threads);

    std::vector<Region> cells;
    for (int j = 0; j < config.grid_ny; ++j) {
        for (int i = 0; i < config.grid_nx; ++i) {
            const Region cell = Region::disk({(i + 0.5) / config.grid_nx, (j + 0.5) / config.grid_ny},
                                             config.sweep_radius);
            if (resolve_region(mesh, cell).empty())
                throw ConfigError("inclusion-sweep: test disk (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") resolves to no triangles; enlarge sweep_radius");
            cells.push_back(cell);
        }
    }
    const auto results = inclusion_sweep(measured, mesh, patch, q_ref, cells, config.contrast,
                                         config.eig_tol, options.threads);

    auto csv_file = out.open("sweep.csv");
    CsvWriter csv(csv_file, {"id", "center_x", "center_y", "radius", "min_eigenvalue", "verdict"});
    for (const auto& cell : results)
        csv.row({CsvWriter::field(cell.id), CsvWriter::field(cell.region.center.x),
                 CsvWriter::field(cell.region.center.y), CsvWriter::field(cell.region.radius),
                 CsvWriter::field(cell.min_eigenvalue), cell.inside ? "inside" : "outside"});
}

}  // namespace

std::string run_experiment(const ExperimentConfig& config, const std::string& config_text,
                           const RunOptions& options) {
    validate_config(config);
    const std::string dir =
        options.output_override.empty() ? config.output_dir : options.output_override;
    OutputDir out(dir);
    const auto start = std::chrono::steady_clock::now();

    try {
        switch (config.kind) {
            case ExperimentKind::NtdConvergence: run_ntd_convergence(config, options, out); break;
            case ExperimentKind::MonotonicityIdentity:
                run_monotonicity_identity(config, options, out);
                break;
            case ExperimentKind::LocalizedSweep: run_localized_sweep(config, options, out); break;
            case ExperimentKind::PositivityTest: run_positivity_test(config, options, out); break;
            case ExperimentKind::InclusionSweep: run_inclusion_sweep(config, options, out); break;
        }

        const auto elapsed = std::chrono::steady_clock::now() - start;
        auto manifest = out.open("manifest.txt");
        char hash[32];
        std::snprintf(hash, sizeof(hash), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(config_text)));
        manifest << "experiment " << to_string(config.kind) << "\n"
                 << "config_hash " << hash << "\n"
                 << "version " << kArtifactVersion << "\n"
                 << "seed " << config.seed << "\n"
                 << "wall_ms "
                 << std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() << "\n";
    } catch (...) {
        out.discard_all();
        throw;
    }
    return out.dir().string();
}

}  // namespace ntdlab
