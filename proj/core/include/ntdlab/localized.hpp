#pragma once

#include <limits>
#include <vector>

#include "ntdlab/forward.hpp"

namespace ntdlab {

/// Per-triangle weight |q1 - q2|^{1/2}; weight^2 reproduces |q1 - q2| exactly
/// on the piecewise-constant difference.
std::vector<double> contrast_weight(const Potential& q1, const Potential& q2);

/// Solution of (K + M_q1) v = load with load_i = sum_{T in region, i in T}
/// weight_T f_T |T|/3, i.e. the virtual source |q1-q2|^{1/2} f restricted to
/// the region, integrated exactly against the nodal basis.
NodalField virtual_source_solve(const Mesh& mesh, const NeumannSolver& solver,
                                const std::vector<double>& weight,
                                const std::vector<int>& region,
                                const std::vector<double>& f);

/// ||  |q1-q2|^{1/2} u  ||^2_{L2(region)} = sum_T weight_T^2 \int_T u^2 dx.
double restriction_norm_sq(const Mesh& mesh, const NodalField& u,
                           const std::vector<double>& weight,
                           const std::vector<int>& region);

/// (f, L^* g)_{L2(region)} = sum_T f_T weight_T \int_T u dx for per-triangle f.
double restriction_inner(const Mesh& mesh, const NodalField& u,
                         const std::vector<double>& weight,
                         const std::vector<int>& region,
                         const std::vector<double>& f);

/// Gram matrix of the virtual measurement adjoint over the Gamma flux basis:
/// gram(i,j) = sum_{T in region} |q1-q2|_T \int_T u_i u_j dx, with u_i the
/// nodal-basis-flux solutions (reused from NtdSolver::basis_solutions).
struct VirtualMeasurementGram {
    std::vector<int> region;      // triangle indices
    std::vector<double> weight;   // per-triangle |q1-q2|^{1/2}, whole mesh
    Eigen::MatrixXd gram;         // (#Gamma)^2, symmetric PSD

    int size() const { return static_cast<int>(gram.rows()); }
};

VirtualMeasurementGram build_gram(const Mesh& mesh, const GammaPatch& patch,
                                  const Potential& q1, const Potential& q2,
                                  const std::vector<int>& region,
                                  const Eigen::MatrixXd& basis_solutions);

/// One step of the delta sweep realizing the localized-potentials sequence.
struct LocalizedStep {
    double delta = 0.0;
    double ratio = 0.0;        // ||L_B^* g'|| / ||L_out^* g'||, inf sentinel
    double norm_b = 0.0;
    double norm_out = 0.0;
    double eigenvalue = 0.0;   // top pencil eigenvalue
    Eigen::VectorXd g;         // scaled flux g_m
};

/// For each delta, maximizes the generalized Rayleigh quotient
/// (g, gramB g) / (g, (gramOut + delta M_Gamma) g) over the Gamma flux space
/// and reports the localization ratio at the maximizer. The flux is rescaled
/// as g = g' / (m ||L_out^* g'||) when ||L_out^* g'|| > 0, else g = m g' with
/// ||g'||_{M_Gamma} = 1 (the non-injective branch), m = 1-based step index.
/// Throws InvalidArgument when gramB is numerically zero ("no contrast on B")
/// or the delta schedule is not strictly decreasing and positive.
std::vector<LocalizedStep> localized_sequence(const VirtualMeasurementGram& gram_b,
                                              const VirtualMeasurementGram& gram_out,
                                              const Eigen::MatrixXd& m_gamma,
                                              const std::vector<double>& deltas);

constexpr double kRatioInfinity = std::numeric_limits<double>::infinity();

}  // namespace ntdlab
