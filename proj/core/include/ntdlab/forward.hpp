#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <memory>

#include "ntdlab/assembly.hpp"

namespace ntdlab {

/// One real per mesh node; coefficients of a piecewise-linear function.
using NodalField = Eigen::VectorXd;

/// SPD solver for systems S u = load with S = K + M_q. Direct Cholesky up to
/// kDirectLimit unknowns, diagonally preconditioned conjugate gradients above,
/// behind the same 1e-10 relative-residual contract. Immutable after setup;
/// concurrent solves for distinct right-hand sides are allowed.
class NeumannSolver {
  public:
    static constexpr int kDirectLimit = 20000;
    static constexpr double kResidualTol = 1e-10;

    explicit NeumannSolver(SparseMatrix system);

    /// Throws NumericalError when the residual contract cannot be met,
    /// reporting the achieved residual.
    NodalField solve(const Eigen::VectorXd& load) const;

    int dimension() const { return static_cast<int>(system_.rows()); }
    const SparseMatrix& system() const { return system_; }

  private:
    SparseMatrix system_;
    bool direct_ = true;
    std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> ldlt_;
};

/// Dense representation of the local Neumann-to-Dirichlet map on the trace
/// basis of a GammaPatch. M_Gamma-self-adjoint and M_Gamma-positive definite.
struct NtdMatrix {
    Eigen::MatrixXd values;       // (#Gamma)^2
    std::vector<int> gamma_nodes;  // identifies the patch

    int size() const { return static_cast<int>(values.rows()); }
    bool same_patch(const GammaPatch& patch) const { return gamma_nodes == patch.nodes; }
};

/// Shares one factorization of K + M_q across all Gamma fluxes.
class NtdSolver {
  public:
    NtdSolver(const Mesh& mesh, const GammaPatch& patch, const Potential& q);

    /// Full-domain solution for nodal flux values g on Gamma.
    NodalField solve_flux(const Eigen::VectorXd& g) const;

    /// Column j = solution for the j-th nodal basis flux on Gamma
    /// (#mesh nodes x #Gamma). Columns are independent solves and are
    /// distributed over `threads` workers.
    Eigen::MatrixXd basis_solutions(int threads = 1) const;

    /// The NtD matrix: row i, column j = trace at Gamma node i of the j-th
    /// basis solution.
    NtdMatrix ntd(int threads = 1) const;

    const NeumannSolver& solver() const { return solver_; }
    const GammaPatch& patch() const { return *patch_; }
    const Mesh& mesh() const { return *mesh_; }

  private:
    const Mesh* mesh_;
    const GammaPatch* patch_;
    NeumannSolver solver_;
};

NtdMatrix ntd_matrix(const Mesh& mesh, const GammaPatch& patch, const Potential& q,
                     int threads = 1);

/// Matrix-vector product; throws InvalidArgument on dimension mismatch.
Eigen::VectorXd ntd_apply(const NtdMatrix& ntd, const Eigen::VectorXd& g);

/// Largest relative asymmetry of M_Gamma * Lambda, for self-adjointness audits.
double ntd_asymmetry(const NtdMatrix& ntd, const GammaPatch& patch);

}  // namespace ntdlab
