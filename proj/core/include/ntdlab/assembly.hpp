#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "ntdlab/mesh.hpp"

namespace ntdlab {

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Piecewise-constant coefficient, one value per triangle, with positive
/// essential infimum. min_value > 0 is enforced at every mutation.
class Potential {
  public:
    Potential(const Mesh& mesh, std::vector<double> values);
    static Potential constant(const Mesh& mesh, double value);

    /// Sets the coefficient on every triangle of the region.
    void set_region(const Mesh& mesh, const Region& region, double value);
    void set_triangles(const std::vector<int>& tris, double value);

    const std::vector<double>& values() const { return values_; }
    double value(int tri) const { return values_[static_cast<size_t>(tri)]; }
    double min_value() const { return min_value_; }
    int size() const { return static_cast<int>(values_.size()); }

  private:
    void recompute_min();
    std::vector<double> values_;
    double min_value_ = 0.0;
};

/// Piecewise-linear stiffness matrix, exact per element. Row sums vanish.
/// Throws MeshError on a degenerate triangle.
SparseMatrix assemble_stiffness(const Mesh& mesh);

/// Mass matrix weighted by the piecewise-constant potential q, exact per
/// element: q_T * (|T|/12) [[2,1,1],[1,2,1],[1,1,2]].
SparseMatrix assemble_weighted_mass(const Mesh& mesh, const Potential& q);

/// Selects a subset of boundary edges. `Sides` is interpreted against the
/// mesh bounding box (bottom/right/top/left); `Box` keeps edges whose midpoint
/// lies in the closed box.
struct BoundarySelector {
    enum class Kind { All, Sides, Box };
    enum Side : unsigned { Bottom = 1u, Right = 2u, Top = 4u, Left = 8u };

    Kind kind = Kind::All;
    unsigned side_mask = 0;
    Vec2 lo, hi;

    static BoundarySelector all();
    static BoundarySelector sides(unsigned mask);
    static BoundarySelector box(Vec2 lo, Vec2 hi);
};

/// Boundary patch Gamma: the selected boundary edges, their nodes ordered
/// along the boundary walk, and the assembled boundary mass matrix M_Gamma
/// ((h/6)[[2,1],[1,2]] per edge). Nodes shared with the complement belong to
/// the patch (closed-patch convention).
struct GammaPatch {
    std::vector<int> nodes;          // global node ids, in boundary order
    std::vector<int> edges;          // indices into mesh.boundary_edges
    Eigen::MatrixXd mass;            // M_Gamma, (#nodes)^2, SPD
    std::vector<int> node_to_local;  // size = mesh nodes, -1 if not on Gamma

    int size() const { return static_cast<int>(nodes.size()); }
    double length() const { return mass.sum(); }
    bool same_patch(const GammaPatch& other) const { return nodes == other.nodes; }
};

/// Throws InvalidArgument when the selector matches no boundary edge.
GammaPatch build_gamma_patch(const Mesh& mesh, const BoundarySelector& sel);

/// Load vector realizing l(w) = \int_Gamma g w ds for nodal flux values g on
/// the patch: M_Gamma g scattered into global numbering.
Eigen::VectorXd assemble_boundary_load(const Mesh& mesh, const GammaPatch& patch,
                                       const Eigen::VectorXd& g);

/// Coordinate-format text dump ("i j value" per nonzero), for debugging.
void export_sparse_coord(std::ostream& out, const SparseMatrix& m);

}  // namespace ntdlab
