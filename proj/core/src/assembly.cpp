#include "ntdlab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

namespace ntdlab {

Potential::Potential(const Mesh& mesh, std::vector<double> values) : values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != mesh.triangle_count())
        throw InvalidArgument("Potential: one value per triangle required");
    recompute_min();
}

Potential Potential::constant(const Mesh& mesh, double value) {
    return Potential(mesh, std::vector<double>(static_cast<size_t>(mesh.triangle_count()), value));
}

void Potential::set_region(const Mesh& mesh, const Region& region, double value) {
    set_triangles(resolve_region(mesh, region), value);
}

void Potential::set_triangles(const std::vector<int>& tris, double value) {
    // validate before mutating: a rejected call must leave the values intact
    if (!std::isfinite(value))
        throw InvalidArgument("Potential: non-finite value");
    if (!(value > 0.0))
        throw InvalidArgument("Potential: values must have a positive lower bound (L-infinity-plus)");
    for (int t : tris)
        if (t < 0 || t >= size()) throw InvalidArgument("Potential: triangle index out of range");
    for (int t : tris) values_[static_cast<size_t>(t)] = value;
    recompute_min();
}

void Potential::recompute_min() {
    double min_value = std::numeric_limits<double>::infinity();
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidArgument("Potential: non-finite value");
        min_value = std::min(min_value, v);
    }
    if (!(min_value > 0.0))
        throw InvalidArgument("Potential: values must have a positive lower bound (L-infinity-plus)");
    min_value_ = min_value;
}

namespace {

// P1 gradient coefficients: grad phi_i = (b_i, c_i) on the triangle.
struct LocalGeometry {
    double area;
    double b[3];
    double c[3];
};

LocalGeometry local_geometry(const Mesh& mesh, int t) {
    const auto& tri = mesh.triangles[static_cast<size_t>(t)];
    const Vec2 p[3] = {mesh.nodes[static_cast<size_t>(tri[0])],
                       mesh.nodes[static_cast<size_t>(tri[1])],
                       mesh.nodes[static_cast<size_t>(tri[2])]};
    LocalGeometry g{};
    g.area = mesh.signed_area(t);
    if (!(g.area > 0.0))
        throw MeshError("assemble: degenerate triangle " + std::to_string(t));
    for (int i = 0; i < 3; ++i) {
        const Vec2& pj = p[(i + 1) % 3];
        const Vec2& pk = p[(i + 2) % 3];
        g.b[i] = (pj.y - pk.y) / (2.0 * g.area);
        g.c[i] = (pk.x - pj.x) / (2.0 * g.area);
    }
    return g;
}

}  // namespace

SparseMatrix assemble_stiffness(const Mesh& mesh) {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<size_t>(mesh.triangle_count()) * 9);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const LocalGeometry g = local_geometry(mesh, t);
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                entries.emplace_back(tri[static_cast<size_t>(i)], tri[static_cast<size_t>(j)],
                                     g.area * (g.b[i] * g.b[j] + g.c[i] * g.c[j]));
    }
    SparseMatrix k(mesh.node_count(), mesh.node_count());
    k.setFromTriplets(entries.begin(), entries.end());
    return k;
}

SparseMatrix assemble_weighted_mass(const Mesh& mesh, const Potential& q) {
    if (q.size() != mesh.triangle_count())
        throw InvalidArgument("assemble_weighted_mass: potential size mismatch");
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<size_t>(mesh.triangle_count()) * 9);
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const double area = mesh.signed_area(t);
        if (!(area > 0.0)) throw MeshError("assemble: degenerate triangle " + std::to_string(t));
        const double s = q.value(t) * area / 12.0;
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                entries.emplace_back(tri[static_cast<size_t>(i)], tri[static_cast<size_t>(j)],
                                     s * (i == j ? 2.0 : 1.0));
    }
    SparseMatrix m(mesh.node_count(), mesh.node_count());
    m.setFromTriplets(entries.begin(), entries.end());
    return m;
}

BoundarySelector BoundarySelector::all() {
    BoundarySelector s;
    s.kind = Kind::All;
    return s;
}

BoundarySelector BoundarySelector::sides(unsigned mask) {
    BoundarySelector s;
    s.kind = Kind::Sides;
    s.side_mask = mask;
    return s;
}

BoundarySelector BoundarySelector::box(Vec2 lo, Vec2 hi) {
    BoundarySelector s;
    s.kind = Kind::Box;
    s.lo = lo;
    s.hi = hi;
    return s;
}

namespace {

bool edge_selected(const Mesh& mesh, const BoundaryEdge& edge, const BoundarySelector& sel) {
    if (sel.kind == BoundarySelector::Kind::All) return true;

    const Vec2& pa = mesh.nodes[static_cast<size_t>(edge.a)];
    const Vec2& pb = mesh.nodes[static_cast<size_t>(edge.b)];
    const Vec2 mid{0.5 * (pa.x + pb.x), 0.5 * (pa.y + pb.y)};

    if (sel.kind == BoundarySelector::Kind::Box)
        return mid.x >= sel.lo.x && mid.x <= sel.hi.x && mid.y >= sel.lo.y && mid.y <= sel.hi.y;

    // Sides: against the mesh bounding box
    double xmin = mesh.nodes[0].x, xmax = xmin, ymin = mesh.nodes[0].y, ymax = ymin;
    for (const auto& p : mesh.nodes) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    const double tol = 1e-9 * std::max(xmax - xmin, ymax - ymin);
    if ((sel.side_mask & BoundarySelector::Bottom) && std::abs(mid.y - ymin) <= tol) return true;
    if ((sel.side_mask & BoundarySelector::Top) && std::abs(mid.y - ymax) <= tol) return true;
    if ((sel.side_mask & BoundarySelector::Left) && std::abs(mid.x - xmin) <= tol) return true;
    if ((sel.side_mask & BoundarySelector::Right) && std::abs(mid.x - xmax) <= tol) return true;
    return false;
}

}  // namespace

GammaPatch build_gamma_patch(const Mesh& mesh, const BoundarySelector& sel) {
    std::vector<int> selected;
    for (int e = 0; e < static_cast<int>(mesh.boundary_edges.size()); ++e)
        if (edge_selected(mesh, mesh.boundary_edges[static_cast<size_t>(e)], sel)) selected.push_back(e);
    if (selected.empty())
        throw InvalidArgument("build_gamma_patch: selector matches no boundary edge (Gamma must be non-empty)");

    // order edges into chains along the boundary walk
    std::map<int, int> by_tail;  // tail node -> selected edge index
    std::map<int, int> by_head;
    for (int e : selected) {
        const auto& edge = mesh.boundary_edges[static_cast<size_t>(e)];
        by_tail[edge.a] = e;
        by_head[edge.b] = e;
    }
    std::vector<char> visited(mesh.boundary_edges.size(), 0);
    GammaPatch patch;
    patch.node_to_local.assign(static_cast<size_t>(mesh.node_count()), -1);

    auto walk = [&](int start_edge) {
        int e = start_edge;
        const auto& first = mesh.boundary_edges[static_cast<size_t>(e)];
        auto add_node = [&](int n) {
            if (patch.node_to_local[static_cast<size_t>(n)] < 0) {
                patch.node_to_local[static_cast<size_t>(n)] = patch.size();
                patch.nodes.push_back(n);
            }
        };
        add_node(first.a);
        while (true) {
            visited[static_cast<size_t>(e)] = 1;
            patch.edges.push_back(e);
            const auto& edge = mesh.boundary_edges[static_cast<size_t>(e)];
            add_node(edge.b);
            auto next = by_tail.find(edge.b);
            if (next == by_tail.end() || visited[static_cast<size_t>(next->second)]) break;
            e = next->second;
        }
    };

    // open chains first (tail not the head of any selected edge), then cycles
    for (int e : selected) {
        const auto& edge = mesh.boundary_edges[static_cast<size_t>(e)];
        if (!visited[static_cast<size_t>(e)] && by_head.find(edge.a) == by_head.end()) walk(e);
    }
    for (int e : selected)
        if (!visited[static_cast<size_t>(e)]) walk(e);

    patch.mass = Eigen::MatrixXd::Zero(patch.size(), patch.size());
    for (int e : patch.edges) {
        const auto& edge = mesh.boundary_edges[static_cast<size_t>(e)];
        const Vec2& pa = mesh.nodes[static_cast<size_t>(edge.a)];
        const Vec2& pb = mesh.nodes[static_cast<size_t>(edge.b)];
        const double h = std::hypot(pb.x - pa.x, pb.y - pa.y);
        const int la = patch.node_to_local[static_cast<size_t>(edge.a)];
        const int lb = patch.node_to_local[static_cast<size_t>(edge.b)];
        patch.mass(la, la) += h / 3.0;
        patch.mass(lb, lb) += h / 3.0;
        patch.mass(la, lb) += h / 6.0;
        patch.mass(lb, la) += h / 6.0;
    }
    return patch;
}

Eigen::VectorXd assemble_boundary_load(const Mesh& mesh, const GammaPatch& patch,
                                       const Eigen::VectorXd& g) {
    if (g.size() != patch.size())
        throw InvalidArgument("assemble_boundary_load: one flux value per Gamma node required");
    const Eigen::VectorXd local = patch.mass * g;
    Eigen::VectorXd load = Eigen::VectorXd::Zero(mesh.node_count());
    for (int i = 0; i < patch.size(); ++i) load[patch.nodes[static_cast<size_t>(i)]] = local[i];
    return load;
}

void export_sparse_coord(std::ostream& out, const SparseMatrix& m) {
    out.precision(17);
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            out << it.row() << " " << it.col() << " " << it.value() << "\n";
}

}  // namespace ntdlab
