#include "ntdlab/forward.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

namespace ntdlab {

NeumannSolver::NeumannSolver(SparseMatrix system) : system_(std::move(system)) {
    if (system_.rows() != system_.cols())
        throw InvalidArgument("NeumannSolver: square system required");
    direct_ = system_.rows() <= kDirectLimit;
    if (direct_) {
        ldlt_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>();
        ldlt_->compute(system_);
        if (ldlt_->info() != Eigen::Success)
            throw NumericalError("NeumannSolver: factorization failed (system not SPD?)");
        if (ldlt_->vectorD().minCoeff() <= 0.0)
            throw NumericalError("NeumannSolver: system is not positive definite (invariant violation)");
    }
}

NodalField NeumannSolver::solve(const Eigen::VectorXd& load) const {
    if (load.size() != system_.rows())
        throw InvalidArgument("NeumannSolver: load dimension mismatch");
    const double load_norm = load.norm();
    if (load_norm == 0.0) return NodalField::Zero(system_.rows());

    NodalField u;
    if (direct_) {
        u = ldlt_->solve(load);
    } else {
        // local solver object: iterative solve mutates internal counters
        Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper> cg;
        cg.setTolerance(1e-12);
        cg.setMaxIterations(10 * system_.rows());
        cg.compute(system_);
        u = cg.solve(load);
    }
    const double residual = (system_ * u - load).norm() / load_norm;
    if (!(residual <= kResidualTol)) {
        std::ostringstream msg;
        msg << "NeumannSolver: residual contract violated, achieved " << residual
            << " (required " << kResidualTol << ")";
        throw NumericalError(msg.str());
    }
    return u;
}

NtdSolver::NtdSolver(const Mesh& mesh, const GammaPatch& patch, const Potential& q)
    : mesh_(&mesh),
      patch_(&patch),
      solver_(assemble_stiffness(mesh) + assemble_weighted_mass(mesh, q)) {}

NodalField NtdSolver::solve_flux(const Eigen::VectorXd& g) const {
    return solver_.solve(assemble_boundary_load(*mesh_, *patch_, g));
}

Eigen::MatrixXd NtdSolver::basis_solutions(int threads) const {
    const int m = patch_->size();
    Eigen::MatrixXd solutions(mesh_->node_count(), m);
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (int j = next.fetch_add(1); j < m && !failed.load(); j = next.fetch_add(1)) {
            try {
                solutions.col(j) = solver_.solve(
                    assemble_boundary_load(*mesh_, *patch_, Eigen::VectorXd::Unit(m, j)));
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = "basis flux column " + std::to_string(j) + ": " + e.what();
                failed.store(true);
            }
        }
    };

    threads = std::max(1, std::min(threads, m));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw NumericalError("ntd_matrix: " + error_message);
    return solutions;
}

NtdMatrix NtdSolver::ntd(int threads) const {
    const Eigen::MatrixXd solutions = basis_solutions(threads);
    NtdMatrix result;
    result.gamma_nodes = patch_->nodes;
    result.values.resize(patch_->size(), patch_->size());
    for (int i = 0; i < patch_->size(); ++i)
        result.values.row(i) = solutions.row(patch_->nodes[static_cast<size_t>(i)]);
    return result;
}

NtdMatrix ntd_matrix(const Mesh& mesh, const GammaPatch& patch, const Potential& q, int threads) {
    return NtdSolver(mesh, patch, q).ntd(threads);
}

Eigen::VectorXd ntd_apply(const NtdMatrix& ntd, const Eigen::VectorXd& g) {
    if (g.size() != ntd.values.cols())
        throw InvalidArgument("ntd_apply: flux dimension mismatch");
    return ntd.values * g;
}

double ntd_asymmetry(const NtdMatrix& ntd, const GammaPatch& patch) {
    if (!ntd.same_patch(patch)) throw InvalidArgument("ntd_asymmetry: patch mismatch");
    const Eigen::MatrixXd a = patch.mass * ntd.values;
    const double scale = a.norm();
    if (scale == 0.0) return 0.0;
    return (a - a.transpose()).norm() / scale;
}

}  // namespace ntdlab
