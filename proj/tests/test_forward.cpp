#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

#include "ntdlab/forward.hpp"
#include "ntdlab/io.hpp"

using namespace ntdlab;

namespace {

// Closed-form solution of -Delta u + u = 0 on the unit square with flux
// cos(k pi x) on the bottom edge, zero elsewhere:
//   u(x,y) = cos(k pi x) cosh(mu (1-y)) / (mu sinh mu),  mu = sqrt(k^2 pi^2 + 1).
double separable_solution(int k, double x, double y) {
    const double mu = std::sqrt(k * k * M_PI * M_PI + 1.0);
    return std::cos(k * M_PI * x) * std::cosh(mu * (1.0 - y)) / (mu * std::sinh(mu));
}

double separable_rayleigh(int k) {
    const double mu = std::sqrt(k * k * M_PI * M_PI + 1.0);
    return 1.0 / (mu * std::tanh(mu));
}

Eigen::VectorXd bottom_flux(const Mesh& mesh, const GammaPatch& patch, int k) {
    Eigen::VectorXd g(patch.size());
    for (int i = 0; i < patch.size(); ++i)
        g[i] = std::cos(k * M_PI * mesh.nodes[static_cast<size_t>(patch.nodes[static_cast<size_t>(i)])].x);
    return g;
}

struct Setup {
    Mesh mesh;
    GammaPatch patch;
    Setup(int n, bool full_boundary = false)
        : mesh(build_unit_square_mesh(n)),
          patch(build_gamma_patch(mesh, full_boundary
                                            ? BoundarySelector::all()
                                            : BoundarySelector::sides(BoundarySelector::Bottom))) {}
};

}  // namespace

TEST_CASE("zero load yields the zero field") {
    const Setup s(4);
    const NtdSolver solver(s.mesh, s.patch, Potential::constant(s.mesh, 1.0));
    const NodalField u = solver.solver().solve(Eigen::VectorXd::Zero(s.mesh.node_count()));
    CHECK(u.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Galerkin energy identity b(u,u) = l(u) for the full-boundary problem") {
    const Setup s(8, true);
    const Potential q = Potential::constant(s.mesh, 1.0);
    const Eigen::VectorXd load =
        assemble_boundary_load(s.mesh, s.patch, Eigen::VectorXd::Ones(s.patch.size()));
    const SparseMatrix system =
        assemble_stiffness(s.mesh) + assemble_weighted_mass(s.mesh, q);
    const NodalField u = NeumannSolver(system).solve(load);
    const double b_uu = u.dot(system * u);
    const double l_u = load.dot(u);
    CHECK(std::abs(b_uu - l_u) <= 1e-10 * std::abs(l_u));
}

TEST_CASE("separable closed form: O(h^2) max-node error decay") {
    double previous_error = 0.0;
    int step = 0;
    for (int n : {8, 16, 32}) {
        const Setup s(n);
        const NtdSolver solver(s.mesh, s.patch, Potential::constant(s.mesh, 1.0));
        const NodalField u = solver.solve_flux(bottom_flux(s.mesh, s.patch, 1));
        double error = 0.0;
        for (int i = 0; i < s.mesh.node_count(); ++i) {
            const Vec2& p = s.mesh.nodes[static_cast<size_t>(i)];
            error = std::max(error, std::abs(u[i] - separable_solution(1, p.x, p.y)));
        }
        if (step > 0) {
            const double ratio = previous_error / error;
            CHECK(ratio > 3.0);
            CHECK(ratio < 5.0);
        }
        previous_error = error;
        ++step;
    }
}

TEST_CASE("identical potentials give bitwise-identical NtD matrices") {
    const Setup s(8);
    const Potential q = Potential::constant(s.mesh, 1.3);
    const NtdMatrix a = ntd_matrix(s.mesh, s.patch, q);
    const NtdMatrix b = ntd_matrix(s.mesh, s.patch, q);
    CHECK((a.values - b.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Rayleigh quotients of the separable fluxes converge to coth(mu)/mu") {
    for (int k : {1, 2}) {
        const double reference = separable_rayleigh(k);
        double previous_error = 0.0;
        int step = 0;
        for (int n : {8, 16, 32}) {
            const Setup s(n);
            const NtdMatrix ntd = ntd_matrix(s.mesh, s.patch, Potential::constant(s.mesh, 1.0));
            const Eigen::VectorXd g = bottom_flux(s.mesh, s.patch, k);
            const double rayleigh = g.dot(s.patch.mass * (ntd.values * g)) / g.dot(s.patch.mass * g);
            const double error = std::abs(rayleigh - reference);
            if (step > 0) {
                CHECK(previous_error / error > 3.0);
                CHECK(previous_error / error < 5.0);
            }
            previous_error = error;
            ++step;
        }
    }
    // monotone decay of coth(mu)/mu in k
    CHECK(separable_rayleigh(2) < separable_rayleigh(1));
}

TEST_CASE("ntd_apply") {
    const Setup s(6);
    const NtdMatrix ntd = ntd_matrix(s.mesh, s.patch, Potential::constant(s.mesh, 1.0));

    CHECK(ntd_apply(ntd, Eigen::VectorXd::Zero(ntd.size())).cwiseAbs().maxCoeff() == 0.0);
    const Eigen::VectorXd column = ntd_apply(ntd, Eigen::VectorXd::Unit(ntd.size(), 2));
    CHECK((column - ntd.values.col(2)).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(ntd_apply(ntd, Eigen::VectorXd::Zero(ntd.size() + 1)), InvalidArgument);
}

TEST_CASE("self-adjointness in the M_Gamma inner product for random fluxes") {
    const Setup s(8);
    const NtdMatrix ntd = ntd_matrix(s.mesh, s.patch, Potential::constant(s.mesh, 2.0));
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::VectorXd g(ntd.size()), h(ntd.size());
        for (int i = 0; i < ntd.size(); ++i) {
            g[i] = dist(rng);
            h[i] = dist(rng);
        }
        const double lhs = g.dot(s.patch.mass * ntd_apply(ntd, h));
        const double rhs = ntd_apply(ntd, g).dot(s.patch.mass * h);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max({std::abs(lhs), std::abs(rhs), 1.0}));
    }
}

TEST_CASE("random potentials: M_Gamma symmetry and pencil positivity") {
    const Setup s(8);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> q_dist(0.5, 5.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> values(static_cast<size_t>(s.mesh.triangle_count()));
        for (auto& v : values) v = q_dist(rng);
        const NtdMatrix ntd = ntd_matrix(s.mesh, s.patch, Potential(s.mesh, values));
        CHECK(ntd_asymmetry(ntd, s.patch) < 1e-12);

        const Eigen::MatrixXd a = s.patch.mass * ntd.values;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(
            0.5 * (a + a.transpose()), s.patch.mass, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
        REQUIRE(eig.info() == Eigen::Success);
        CHECK(eig.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("threaded NtD assembly matches the sequential result bitwise") {
    const Setup s(12, true);
    const Potential q = Potential::constant(s.mesh, 1.5);
    const NtdMatrix sequential = ntd_matrix(s.mesh, s.patch, q, 1);
    const NtdMatrix threaded = ntd_matrix(s.mesh, s.patch, q, 4);
    CHECK((sequential.values - threaded.values).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("NtD export round trip") {
    const Setup s(4);
    const NtdMatrix ntd = ntd_matrix(s.mesh, s.patch, Potential::constant(s.mesh, 1.0));
    std::stringstream buffer;
    export_ntd(buffer, ntd.values);
    const Eigen::MatrixXd back = import_ntd(buffer);
    CHECK((back - ntd.values).cwiseAbs().maxCoeff() == 0.0);
}
