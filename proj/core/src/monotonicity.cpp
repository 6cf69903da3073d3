#include "ntdlab/monotonicity.hpp"

#include <cmath>

namespace ntdlab {

double quadratic_form_diff(const NtdMatrix& l1, const NtdMatrix& l2,
                           const GammaPatch& patch, const Eigen::VectorXd& g) {
    if (!l1.same_patch(patch) || !l2.same_patch(patch))
        throw InvalidArgument("quadratic_form_diff: NtD matrices on different patches");
    if (g.size() != patch.size())
        throw InvalidArgument("quadratic_form_diff: flux dimension mismatch");
    return g.dot(patch.mass * ((l2.values - l1.values) * g));
}

double weighted_volume_product(const Mesh& mesh, const std::vector<double>& tri_weights,
                               const NodalField& u, const NodalField& v) {
    if (static_cast<int>(tri_weights.size()) != mesh.triangle_count())
        throw InvalidArgument("weighted_volume_product: one weight per triangle required");
    if (u.size() != mesh.node_count() || v.size() != mesh.node_count())
        throw InvalidArgument("weighted_volume_product: field dimension mismatch");
    double sum = 0.0;
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double w = tri_weights[static_cast<size_t>(t)];
        if (w == 0.0) continue;
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        const double ua = u[tri[0]], ub = u[tri[1]], uc = u[tri[2]];
        const double va = v[tri[0]], vb = v[tri[1]], vc = v[tri[2]];
        // local mass matrix (|T|/12)[[2,1,1],[1,2,1],[1,1,2]]
        const double form = 2.0 * (ua * va + ub * vb + uc * vc) + ua * vb + ua * vc +
                            ub * va + ub * vc + uc * va + uc * vb;
        sum += w * mesh.signed_area(t) / 12.0 * form;
    }
    return sum;
}

double monotonicity_bound(const Mesh& mesh, const Potential& q1, const Potential& q2,
                          const NodalField& u1) {
    std::vector<double> diff(static_cast<size_t>(mesh.triangle_count()));
    for (int t = 0; t < mesh.triangle_count(); ++t)
        diff[static_cast<size_t>(t)] = q2.value(t) - q1.value(t);
    return -weighted_volume_product(mesh, diff, u1, u1);
}

IdentityResult monotonicity_identity_residual(const Mesh& mesh, const GammaPatch& patch,
                                              const Potential& q1, const Potential& q2,
                                              const Eigen::VectorXd& g) {
    if (g.norm() == 0.0)
        throw InvalidArgument("monotonicity_identity_residual: flux must be nonzero");

    NtdSolver solver1(mesh, patch, q1);
    NtdSolver solver2(mesh, patch, q2);

    // lhs through the assembled NtD matrices
    const NtdMatrix l1 = solver1.ntd();
    const NtdMatrix l2 = solver2.ntd();
    IdentityResult result;
    result.lhs = quadratic_form_diff(l1, l2, patch, g);

    // rhs through exact element integrals of the solution fields
    const NodalField u1 = solver1.solve_flux(g);
    const NodalField u2 = solver2.solve_flux(g);
    result.bound = monotonicity_bound(mesh, q1, q2, u1);

    const NodalField d = u2 - u1;
    const SparseMatrix k = assemble_stiffness(mesh);
    const double grad_term = d.dot(k * d);
    const double mass_term = weighted_volume_product(mesh, q2.values(), d, d);
    result.rhs = result.bound + grad_term + mass_term;
    result.residual =
        std::abs(result.lhs - result.rhs) / std::max({std::abs(result.lhs), std::abs(result.rhs), 1.0});
    return result;
}

}  // namespace ntdlab
