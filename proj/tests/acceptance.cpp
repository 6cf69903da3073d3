// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit status = number of failures.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "ntdlab/detection.hpp"
#include "ntdlab/localized.hpp"
#include "ntdlab/monotonicity.hpp"

using namespace ntdlab;

namespace {

struct Checker {
    bool ok = true;
    std::ostringstream detail;

    void require(bool condition, const std::string& what) {
        if (!condition) {
            ok = false;
            detail << (detail.str().empty() ? "" : "; ") << what;
        }
    }
};

struct Fixture {
    Mesh mesh;
    GammaPatch patch;
    explicit Fixture(int n)
        : mesh(build_unit_square_mesh(n)),
          patch(build_gamma_patch(mesh, BoundarySelector::sides(BoundarySelector::Bottom))) {}

    Eigen::VectorXd cos_flux(int k) const {
        Eigen::VectorXd g(patch.size());
        for (int i = 0; i < patch.size(); ++i)
            g[i] = std::cos(k * M_PI * mesh.nodes[static_cast<size_t>(patch.nodes[static_cast<size_t>(i)])].x);
        return g;
    }
};

std::string fmt_seconds(double s) {
    std::ostringstream out;
    out.precision(2);
    out << std::fixed << s << " s";
    return out.str();
}

// criterion 1: separable-flux Rayleigh quotients vs coth(mu_k)/mu_k
void criterion_ntd_oracle(Checker& c) {
    for (int k : {1, 2}) {
        const double mu = std::sqrt(k * k * M_PI * M_PI + 1.0);
        const double reference = 1.0 / (mu * std::tanh(mu));
        double previous_error = 0.0;
        double final_error = 0.0;
        int step = 0;
        for (int n : {8, 16, 32}) {
            const Fixture f(n);
            const NtdMatrix ntd = ntd_matrix(f.mesh, f.patch, Potential::constant(f.mesh, 1.0), 2);
            const Eigen::VectorXd g = f.cos_flux(k);
            const double rayleigh = g.dot(f.patch.mass * (ntd.values * g)) / g.dot(f.patch.mass * g);
            const double error = std::abs(rayleigh - reference);
            if (step > 0) {
                const double ratio = previous_error / error;
                c.require(ratio >= 3.0 && ratio <= 5.0,
                          "k=" + std::to_string(k) + " refinement ratio " + std::to_string(ratio) +
                              " outside [3,5]");
            }
            previous_error = error;
            final_error = error;
            ++step;
        }
        c.require(final_error < 1e-3,
                  "k=" + std::to_string(k) + " error at n=32 is " + std::to_string(final_error));
    }
}

// criterion 2: exact monotonicity identity over 100 seeded random instances
void criterion_monotonicity_identity(Checker& c) {
    const Fixture f(16);
    std::mt19937_64 rng(20170311);
    std::uniform_real_distribution<double> q_dist(0.5, 5.0);
    std::uniform_real_distribution<double> g_dist(-1.0, 1.0);
    double worst_residual = 0.0;
    double worst_defect = 0.0;

    for (int instance = 0; instance < 100; ++instance) {
        std::vector<double> v1(static_cast<size_t>(f.mesh.triangle_count()));
        std::vector<double> v2(v1.size());
        for (auto& v : v1) v = q_dist(rng);
        for (auto& v : v2) v = q_dist(rng);
        Eigen::VectorXd g(f.patch.size());
        for (int i = 0; i < f.patch.size(); ++i) g[i] = g_dist(rng);

        const IdentityResult r =
            monotonicity_identity_residual(f.mesh, f.patch, Potential(f.mesh, v1), Potential(f.mesh, v2), g);
        worst_residual = std::max(worst_residual, r.residual);
        worst_defect = std::min(worst_defect, r.lhs - r.bound);
    }
    c.require(worst_residual <= 1e-9, "worst identity residual " + std::to_string(worst_residual));
    c.require(worst_defect >= -1e-12, "worst inequality defect " + std::to_string(worst_defect));
}

// criterion 3: positive-eigenvalue verdict for 20 seeded local perturbations
void criterion_positive_eigenvalue(Checker& c) {
    const Fixture f(32);
    const Potential q2 = Potential::constant(f.mesh, 1.0);
    const NtdMatrix l2 = ntd_matrix(f.mesh, f.patch, q2, 2);

    std::mt19937_64 rng(424243);
    std::uniform_real_distribution<double> cx(0.2, 0.8);
    std::uniform_real_distribution<double> cy(0.15, 0.5);  // inside V, a neighborhood of Gamma
    std::uniform_real_distribution<double> contrast(0.5, 4.0);

    int verdicts = 0;
    for (int config = 0; config < 20; ++config) {
        const Region disk = Region::disk({cx(rng), cy(rng)}, 0.1);
        Potential q1 = Potential::constant(f.mesh, 1.0);
        q1.set_region(f.mesh, disk, 1.0 + contrast(rng));
        const NtdMatrix l1 = ntd_matrix(f.mesh, f.patch, q1, 2);
        if (difference_spectrum(l1, l2, f.patch).has_positive) ++verdicts;
    }
    c.require(verdicts == 20, "verdict true in " + std::to_string(verdicts) + "/20 configurations");

    const SpectrumReport control = difference_spectrum(l2, l2, f.patch);
    c.require(!control.has_positive, "control with q1 = q2 reported a positive eigenvalue");
}

// criterion 4: localized potentials ratio sweep, growth under refinement
void criterion_localized_potentials(Checker& c) {
    const std::vector<double> deltas = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    double final_ratio[2] = {0.0, 0.0};
    int which = 0;
    for (int n : {16, 32}) {
        const Fixture f(n);
        const Potential q1 = Potential::constant(f.mesh, 2.0);
        const Potential q2 = Potential::constant(f.mesh, 1.0);
        const NtdSolver solver(f.mesh, f.patch, q1);
        const Eigen::MatrixXd basis = solver.basis_solutions(2);

        const auto ball = resolve_region(f.mesh, Region::disk({0.5, 0.2}, 0.15));
        const auto neighborhood = resolve_region(f.mesh, Region::rect({0, 0}, {1, 0.85}));
        const auto outside = complement_triangles(f.mesh, neighborhood);
        const auto gram_b = build_gram(f.mesh, f.patch, q1, q2, ball, basis);
        const auto gram_out = build_gram(f.mesh, f.patch, q1, q2, outside, basis);

        const auto steps = localized_sequence(gram_b, gram_out, f.patch.mass, deltas);
        for (size_t i = 1; i < steps.size(); ++i)
            c.require(steps[i].ratio >= steps[i - 1].ratio,
                      "n=" + std::to_string(n) + ": ratio decreased along the delta schedule");
        final_ratio[which++] = steps.back().ratio;
    }
    c.require(final_ratio[1] > 50.0, "final ratio at n=32 is " + std::to_string(final_ratio[1]));
    c.require(final_ratio[1] > final_ratio[0],
              "no growth under refinement: n=32 ratio " + std::to_string(final_ratio[1]) +
                  " vs n=16 ratio " + std::to_string(final_ratio[0]));
}

// criterion 5: M_Gamma-self-adjointness and positivity for 50 random potentials
void criterion_self_adjointness(Checker& c) {
    const Fixture f(16);
    std::mt19937_64 rng(5050);
    std::uniform_real_distribution<double> q_dist(0.5, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> values(static_cast<size_t>(f.mesh.triangle_count()));
        for (auto& v : values) v = q_dist(rng);
        const NtdMatrix ntd = ntd_matrix(f.mesh, f.patch, Potential(f.mesh, values));
        const double asym = ntd_asymmetry(ntd, f.patch);
        c.require(asym <= 1e-12, "trial " + std::to_string(trial) + ": asymmetry " + std::to_string(asym));

        const Eigen::MatrixXd a = f.patch.mass * ntd.values;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(
            0.5 * (a + a.transpose()), f.patch.mass, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
        c.require(eig.info() == Eigen::Success && eig.eigenvalues().minCoeff() > 0.0,
                  "trial " + std::to_string(trial) + ": non-positive pencil eigenvalue");
    }
}

// criterion 6: duality (L f, g) = (f, L* g) on 50 random instances
void criterion_duality(Checker& c) {
    const Fixture f(16);
    std::mt19937_64 rng(6060);
    std::uniform_real_distribution<double> q_dist(1.2, 4.0);
    std::uniform_real_distribution<double> center(0.25, 0.75);
    std::uniform_real_distribution<double> value(-1.0, 1.0);

    for (int trial = 0; trial < 50; ++trial) {
        Potential q1 = Potential::constant(f.mesh, 1.0);
        const Region disk = Region::disk({center(rng), center(rng)}, 0.2);
        q1.set_region(f.mesh, disk, q_dist(rng));
        const Potential q2 = Potential::constant(f.mesh, 1.0);
        const auto weight = contrast_weight(q1, q2);
        const auto region = resolve_region(f.mesh, disk);
        const NtdSolver solver(f.mesh, f.patch, q1);

        std::vector<double> source(region.size());
        for (auto& v : source) v = value(rng);
        Eigen::VectorXd g(f.patch.size());
        for (int i = 0; i < f.patch.size(); ++i) g[i] = value(rng);

        const NodalField v = virtual_source_solve(f.mesh, solver.solver(), weight, region, source);
        Eigen::VectorXd trace(f.patch.size());
        for (int i = 0; i < f.patch.size(); ++i) trace[i] = v[f.patch.nodes[static_cast<size_t>(i)]];
        const double lhs = trace.dot(f.patch.mass * g);
        const double rhs = restriction_inner(f.mesh, solver.solve_flux(g), weight, region, source);

        const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1.0});
        c.require(rel <= 1e-9, "trial " + std::to_string(trial) + ": relative gap " + std::to_string(rel));
    }
}

// criterion 7: 8x8 inclusion sweep demonstration
void criterion_inclusion_sweep(Checker& c) {
    const Fixture f(32);
    const Potential q_ref = Potential::constant(f.mesh, 1.0);
    const Vec2 true_center{0.4375, 0.1875};  // one grid disk
    const double radius = 0.06;

    std::vector<double> values = q_ref.values();
    for (int t : resolve_region(f.mesh, Region::disk(true_center, radius)))
        values[static_cast<size_t>(t)] += 1.0;
    const NtdMatrix measured = ntd_matrix(f.mesh, f.patch, Potential(f.mesh, values), 2);

    std::vector<Region> cells;
    int true_cell = -1;
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            const Vec2 center{(i + 0.5) / 8.0, (j + 0.5) / 8.0};
            if (center.x == true_center.x && center.y == true_center.y)
                true_cell = static_cast<int>(cells.size());
            cells.push_back(Region::disk(center, radius));
        }
    }
    c.require(true_cell >= 0, "true disk is not a grid cell");

    const auto result = inclusion_sweep(measured, f.mesh, f.patch, q_ref, cells, 1.0, 0.0, 2);
    c.require(result[static_cast<size_t>(true_cell)].inside, "true disk cell not marked inside");
    for (const auto& cell : result) {
        const double dx = cell.region.center.x - true_center.x;
        const double dy = cell.region.center.y - true_center.y;
        const double gap = std::hypot(dx, dy) - 2.0 * radius;  // distance between the disks
        if (gap > 0.2 && cell.inside)
            c.require(false, "cell " + std::to_string(cell.id) + " at distance " +
                                 std::to_string(gap) + " marked inside");
    }
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<void(Checker&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "NtD separable-flux oracle", 10.0, criterion_ntd_oracle},
        {2, "monotonicity identity, 100 random instances", 60.0, criterion_monotonicity_identity},
        {3, "positive-eigenvalue test, 20 seeded configurations", 300.0, criterion_positive_eigenvalue},
        {4, "localized potentials delta sweep", 300.0, criterion_localized_potentials},
        {5, "NtD self-adjointness and positivity, 50 random potentials", 120.0, criterion_self_adjointness},
        {6, "virtual measurement duality audit, 50 random instances", 120.0, criterion_duality},
        {7, "8x8 inclusion sweep demonstration", 600.0, criterion_inclusion_sweep},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(checker);
        } catch (const std::exception& e) {
            checker.require(false, std::string("exception: ") + e.what());
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        checker.require(seconds < criterion.budget_seconds,
                        "runtime " + fmt_seconds(seconds) + " exceeds budget");

        std::cout << (checker.ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
                  << criterion.name << " (" << fmt_seconds(seconds) << ")";
        if (!checker.ok) std::cout << " -- " << checker.detail.str();
        std::cout << "\n";
        if (!checker.ok) ++failures;
    }
    return failures;
}
