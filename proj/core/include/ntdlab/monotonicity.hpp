#pragma once

#include "ntdlab/forward.hpp"

namespace ntdlab {

/// g^T M_Gamma (L2 - L1) g, the quadratic form of the NtD difference in the
/// L2(Gamma) inner product. Throws InvalidArgument on patch mismatch.
double quadratic_form_diff(const NtdMatrix& l1, const NtdMatrix& l2,
                           const GammaPatch& patch, const Eigen::VectorXd& g);

/// The lower bound of the monotonicity inequality:
/// -sum_T (q2 - q1)|_T \int_T u1^2 dx, element integrals exact.
double monotonicity_bound(const Mesh& mesh, const Potential& q1, const Potential& q2,
                          const NodalField& u1);

struct IdentityResult {
    double lhs = 0.0;       // quadratic form of the NtD difference
    double rhs = 0.0;       // bound + the two dropped nonnegative terms
    double bound = 0.0;     // monotonicity_bound for the same flux
    double residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1)
};

/// Evaluates both sides of the exact identity behind the monotonicity
/// inequality for Galerkin solutions on a common mesh:
///   lhs = g^T M_Gamma (Lambda(q2) - Lambda(q1)) g
///   rhs = -\int (q2-q1) u1^2 + \int |grad(u2-u1)|^2 + \int q2 (u1-u2)^2
/// The two sides come from independent code paths (NtD matrices vs. element
/// integrals of the solution fields), so the residual measures solver error.
IdentityResult monotonicity_identity_residual(const Mesh& mesh, const GammaPatch& patch,
                                              const Potential& q1, const Potential& q2,
                                              const Eigen::VectorXd& g);

/// sum_T w_T u^T M_T v over the listed triangles (all triangles if empty
/// weights are not allowed; pass per-triangle weights of size tri count).
double weighted_volume_product(const Mesh& mesh, const std::vector<double>& tri_weights,
                               const NodalField& u, const NodalField& v);

}  // namespace ntdlab
