#include "ntdlab/detection.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

namespace ntdlab {

namespace {

// eigenvalues of the pencil (sym(M (L2 - L1)), M), ascending
Eigen::VectorXd pencil_spectrum(const Eigen::MatrixXd& diff, const Eigen::MatrixXd& mass,
                                const char* stage) {
    const Eigen::MatrixXd a = mass * diff;
    const Eigen::MatrixXd sym = 0.5 * (a + a.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym, mass,
                                                                  Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (eig.info() != Eigen::Success)
        throw NumericalError(std::string(stage) + ": pencil eigensolve failed");
    return eig.eigenvalues();
}

void check_symmetry(const NtdMatrix& l, const GammaPatch& patch, const char* stage) {
    if (ntd_asymmetry(l, patch) > 1e-9)
        throw NumericalError(std::string(stage) +
                             ": NtD matrix not M_Gamma-self-adjoint (upstream invariant violation)");
}

}  // namespace

SpectrumReport difference_spectrum(const NtdMatrix& l1, const NtdMatrix& l2,
                                   const GammaPatch& patch, double tol) {
    if (!l1.same_patch(patch) || !l2.same_patch(patch))
        throw InvalidArgument("difference_spectrum: NtD matrices on different patches");
    check_symmetry(l1, patch, "difference_spectrum");
    check_symmetry(l2, patch, "difference_spectrum");

    SpectrumReport report;
    report.tol = tol > 0.0 ? tol : 1e-10 * (patch.mass * l1.values).norm();

    const Eigen::VectorXd ascending =
        pencil_spectrum(l2.values - l1.values, patch.mass, "difference_spectrum");
    report.eigenvalues = ascending.reverse();
    report.max_eigenvalue = report.eigenvalues[0];
    report.has_positive = report.max_eigenvalue > report.tol;
    return report;
}

std::vector<SweepCell> inclusion_sweep(const NtdMatrix& measured, const Mesh& mesh,
                                       const GammaPatch& patch, const Potential& q_ref,
                                       const std::vector<Region>& test_regions,
                                       double contrast, double tol, int threads) {
    if (test_regions.empty()) throw InvalidArgument("inclusion_sweep: empty region list");
    if (!(contrast > 0.0)) throw InvalidArgument("inclusion_sweep: contrast must be positive");
    if (!measured.same_patch(patch))
        throw InvalidArgument("inclusion_sweep: measured NtD on a different patch");
    check_symmetry(measured, patch, "inclusion_sweep");

    const double effective_tol = tol > 0.0 ? tol : 1e-10 * (patch.mass * measured.values).norm();
    const int count = static_cast<int>(test_regions.size());
    std::vector<SweepCell> cells(static_cast<size_t>(count));

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (int r = next.fetch_add(1); r < count && !failed.load(); r = next.fetch_add(1)) {
            try {
                const Region& region = test_regions[static_cast<size_t>(r)];
                std::vector<double> values = q_ref.values();
                for (int t : resolve_region(mesh, region))
                    values[static_cast<size_t>(t)] += contrast;
                const NtdMatrix l_test = ntd_matrix(mesh, patch, Potential(mesh, values));

                SweepCell cell;
                cell.id = r;
                cell.region = region;
                // pencil spectrum of Lambda(test) - Lambda(measured)
                const Eigen::VectorXd spectrum = pencil_spectrum(
                    l_test.values - measured.values, patch.mass, "inclusion_sweep");
                cell.min_eigenvalue = spectrum[0];
                cell.inside = cell.min_eigenvalue >= -effective_tol;
                cells[static_cast<size_t>(r)] = std::move(cell);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                error_message = "region " + std::to_string(r) + ": " + e.what();
                failed.store(true);
            }
        }
    };

    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) throw NumericalError("inclusion_sweep: " + error_message);
    return cells;
}

}  // namespace ntdlab
