#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "ntdlab/errors.hpp"

namespace ntdlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Boundary edge oriented a -> b with the domain on its left, so the outward
/// normal points to the right of the direction of travel. `tri` is the single
/// owning triangle.
struct BoundaryEdge {
    int a = -1;
    int b = -1;
    int tri = -1;
};

/// Conforming triangulation of a polygonal domain. Immutable after
/// construction; safe for concurrent reads.
struct Mesh {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> triangles;  // positively oriented
    std::vector<BoundaryEdge> boundary_edges;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int triangle_count() const { return static_cast<int>(triangles.size()); }

    double signed_area(int t) const;
    double area(int t) const { return signed_area(t); }
    Vec2 barycenter(int t) const;
    double total_area() const;
};

/// Uniform right-triangle mesh of [0,1]^2 with n subdivisions per side.
/// Row-major node ordering, every cell split along the same diagonal.
/// Throws InvalidArgument for n < 1.
Mesh build_unit_square_mesh(int n);

/// Recomputes boundary_edges from the triangle list (edges owned by exactly
/// one triangle, oriented as in that triangle).
void compute_boundary_edges(Mesh& mesh);

/// Re-checks all mesh invariants independently of how the mesh was built:
/// positive triangle areas, edge incidence counts (boundary 1 / interior 2),
/// Euler relation V - E + F = 1, boundary edge orientation consistent with the
/// owning triangle. Throws MeshError on the first violation.
void audit_mesh(const Mesh& mesh);

// Plain-text mesh format:
//   nodes K
//   <x y> * K
//   triangles M
//   <i j k> * M        (0-based)
// Boundary edges are recomputed on load.
Mesh load_mesh(std::istream& in);
Mesh load_mesh_file(const std::string& path);
void save_mesh(std::ostream& out, const Mesh& mesh);
void save_mesh_file(const std::string& path, const Mesh& mesh);

/// Subdomain given by a predicate on triangle barycenters, or an explicit
/// triangle-index set. Resolves deterministically.
struct Region {
    enum class Kind { Disk, Rect, TriangleSet };
    Kind kind = Kind::Disk;
    Vec2 center;
    double radius = 0.0;
    Vec2 lo, hi;                     // Rect corners, lo <= hi componentwise
    std::vector<int> triangle_set;   // TriangleSet only

    static Region disk(Vec2 center, double radius);
    static Region rect(Vec2 lo, Vec2 hi);
    static Region triangles(std::vector<int> indices);
};

/// Triangle indices whose barycenter satisfies the region predicate, sorted
/// ascending. Empty result is valid.
std::vector<int> resolve_region(const Mesh& mesh, const Region& region);

/// Complement of a resolved triangle set within the mesh, sorted ascending.
std::vector<int> complement_triangles(const Mesh& mesh, const std::vector<int>& tris);

}  // namespace ntdlab
