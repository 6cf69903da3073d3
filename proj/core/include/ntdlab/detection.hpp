#pragma once

#include <vector>

#include "ntdlab/forward.hpp"

namespace ntdlab {

/// Spectrum of the pencil (M_Gamma (L2 - L1), M_Gamma), i.e. the eigenvalues
/// of the NtD difference as an operator on L2(Gamma).
struct SpectrumReport {
    Eigen::VectorXd eigenvalues;  // descending
    double max_eigenvalue = 0.0;
    double tol = 0.0;
    bool has_positive = false;    // max_eigenvalue > tol
};

/// tol <= 0 selects the default 1e-10 * ||M_Gamma L1||. Throws NumericalError
/// when M_Gamma L_i is non-symmetric beyond tolerance (upstream invariant).
SpectrumReport difference_spectrum(const NtdMatrix& l1, const NtdMatrix& l2,
                                   const GammaPatch& patch, double tol = 0.0);

struct SweepCell {
    int id = 0;
    Region region;
    double min_eigenvalue = 0.0;  // of Lambda(test) - Lambda(measured) pencil
    bool inside = false;
};

/// Monotonicity shrinking test: for each test region R, compares the measured
/// NtD with Lambda(q_ref + contrast * chi_R). When the test perturbation is
/// dominated by the true one (R inside the support, at contrast), the test
/// difference Lambda(test) - Lambda(measured) stays positive semi-definite;
/// a cell is marked inside when its minimum pencil eigenvalue is >= -tol.
/// "Outside" verdicts are heuristic (no converse theorem backs them).
/// tol <= 0 selects 1e-10 * ||M_Gamma Lambda_meas||.
std::vector<SweepCell> inclusion_sweep(const NtdMatrix& measured, const Mesh& mesh,
                                       const GammaPatch& patch, const Potential& q_ref,
                                       const std::vector<Region>& test_regions,
                                       double contrast, double tol = 0.0,
                                       int threads = 1);

}  // namespace ntdlab
