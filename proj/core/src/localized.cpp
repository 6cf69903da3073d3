#include "ntdlab/localized.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ntdlab/monotonicity.hpp"

namespace ntdlab {

std::vector<double> contrast_weight(const Potential& q1, const Potential& q2) {
    if (q1.size() != q2.size())
        throw InvalidArgument("contrast_weight: potentials on different meshes");
    std::vector<double> weight(static_cast<size_t>(q1.size()));
    for (int t = 0; t < q1.size(); ++t)
        weight[static_cast<size_t>(t)] = std::sqrt(std::abs(q1.value(t) - q2.value(t)));
    return weight;
}

NodalField virtual_source_solve(const Mesh& mesh, const NeumannSolver& solver,
                                const std::vector<double>& weight,
                                const std::vector<int>& region,
                                const std::vector<double>& f) {
    if (static_cast<int>(weight.size()) != mesh.triangle_count())
        throw InvalidArgument("virtual_source_solve: one weight per triangle required");
    if (f.size() != region.size())
        throw InvalidArgument("virtual_source_solve: one source value per region triangle required");

    Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.node_count());
    for (size_t r = 0; r < region.size(); ++r) {
        const int t = region[r];
        const double s = weight[static_cast<size_t>(t)] * f[r] * mesh.signed_area(t) / 3.0;
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        for (int v : tri) load[v] += s;  // \int_T phi_i dx = |T|/3
    }
    return solver.solve(load);
}

double restriction_norm_sq(const Mesh& mesh, const NodalField& u,
                           const std::vector<double>& weight,
                           const std::vector<int>& region) {
    std::vector<double> w2(static_cast<size_t>(mesh.triangle_count()), 0.0);
    for (int t : region) {
        const double w = weight[static_cast<size_t>(t)];
        w2[static_cast<size_t>(t)] = w * w;
    }
    return weighted_volume_product(mesh, w2, u, u);
}

double restriction_inner(const Mesh& mesh, const NodalField& u,
                         const std::vector<double>& weight,
                         const std::vector<int>& region,
                         const std::vector<double>& f) {
    if (f.size() != region.size())
        throw InvalidArgument("restriction_inner: one value per region triangle required");
    double sum = 0.0;
    for (size_t r = 0; r < region.size(); ++r) {
        const int t = region[r];
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        const double integral = mesh.signed_area(t) / 3.0 * (u[tri[0]] + u[tri[1]] + u[tri[2]]);
        sum += f[r] * weight[static_cast<size_t>(t)] * integral;
    }
    return sum;
}

VirtualMeasurementGram build_gram(const Mesh& mesh, const GammaPatch& patch,
                                  const Potential& q1, const Potential& q2,
                                  const std::vector<int>& region,
                                  const Eigen::MatrixXd& basis_solutions) {
    if (basis_solutions.rows() != mesh.node_count() || basis_solutions.cols() != patch.size())
        throw InvalidArgument("build_gram: basis solution matrix has wrong shape");

    VirtualMeasurementGram result;
    result.region = region;
    result.weight = contrast_weight(q1, q2);
    const int m = patch.size();
    result.gram = Eigen::MatrixXd::Zero(m, m);

    for (int t : region) {
        const double contrast = result.weight[static_cast<size_t>(t)];
        if (contrast == 0.0) continue;
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        // rows of the basis solutions at the three vertices, (3 x m)
        Eigen::Matrix<double, 3, Eigen::Dynamic> v(3, m);
        for (int i = 0; i < 3; ++i) v.row(i) = basis_solutions.row(tri[static_cast<size_t>(i)]);
        Eigen::Matrix3d local;
        local << 2, 1, 1, 1, 2, 1, 1, 1, 2;
        local *= mesh.signed_area(t) / 12.0;
        result.gram.noalias() += (contrast * contrast) * (v.transpose() * local * v);
    }
    // exact symmetry for downstream pencil solves
    result.gram = 0.5 * (result.gram + result.gram.transpose()).eval();
    return result;
}

std::vector<LocalizedStep> localized_sequence(const VirtualMeasurementGram& gram_b,
                                              const VirtualMeasurementGram& gram_out,
                                              const Eigen::MatrixXd& m_gamma,
                                              const std::vector<double>& deltas) {
    const int m = static_cast<int>(m_gamma.rows());
    if (gram_b.size() != m || gram_out.size() != m)
        throw InvalidArgument("localized_sequence: Gram/mass dimension mismatch");
    if (deltas.empty()) throw InvalidArgument("localized_sequence: empty delta schedule");
    for (size_t i = 0; i < deltas.size(); ++i) {
        if (!(deltas[i] > 0.0))
            throw InvalidArgument("localized_sequence: deltas must be positive");
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw InvalidArgument("localized_sequence: deltas must be strictly decreasing");
    }
    const double b_scale = gram_b.gram.norm();
    if (b_scale <= 1e-14 * std::max(1.0, m_gamma.norm()))
        throw InvalidArgument("localized_sequence: B carries no contrast (q1 = q2 on B)");

    std::vector<LocalizedStep> steps;
    steps.reserve(deltas.size());
    const double eps = std::numeric_limits<double>::epsilon();

    for (size_t i = 0; i < deltas.size(); ++i) {
        const double delta = deltas[i];
        const Eigen::MatrixXd shifted = gram_out.gram + delta * m_gamma;
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram_b.gram, shifted);
        if (eig.info() != Eigen::Success)
            throw NumericalError("localized_sequence: pencil eigensolve failed at delta " +
                                 std::to_string(delta));

        LocalizedStep step;
        step.delta = delta;
        step.eigenvalue = eig.eigenvalues().maxCoeff();
        Eigen::VectorXd g_prime = eig.eigenvectors().col(m - 1);  // ascending order
        g_prime /= std::sqrt(g_prime.dot(m_gamma * g_prime));     // ||g'||_{M_Gamma} = 1

        step.norm_b = std::sqrt(std::max(0.0, g_prime.dot(gram_b.gram * g_prime)));
        step.norm_out = std::sqrt(std::max(0.0, g_prime.dot(gram_out.gram * g_prime)));

        const int index = static_cast<int>(i) + 1;  // 1-based step index m
        if (step.norm_out <= eps * std::max(step.norm_b, 1.0)) {
            step.ratio = kRatioInfinity;
            step.g = static_cast<double>(index) * g_prime;  // non-injective branch
        } else {
            step.ratio = step.norm_b / std::max(step.norm_out, eps);
            step.g = g_prime / (static_cast<double>(index) * step.norm_out);
        }
        steps.push_back(std::move(step));
    }
    return steps;
}

}  // namespace ntdlab
