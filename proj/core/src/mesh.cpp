#include "ntdlab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

namespace ntdlab {

double Mesh::signed_area(int t) const {
    const auto& tri = triangles[static_cast<size_t>(t)];
    const Vec2& a = nodes[static_cast<size_t>(tri[0])];
    const Vec2& b = nodes[static_cast<size_t>(tri[1])];
    const Vec2& c = nodes[static_cast<size_t>(tri[2])];
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

Vec2 Mesh::barycenter(int t) const {
    const auto& tri = triangles[static_cast<size_t>(t)];
    const Vec2& a = nodes[static_cast<size_t>(tri[0])];
    const Vec2& b = nodes[static_cast<size_t>(tri[1])];
    const Vec2& c = nodes[static_cast<size_t>(tri[2])];
    return {(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
}

double Mesh::total_area() const {
    double sum = 0.0;
    for (int t = 0; t < triangle_count(); ++t) sum += signed_area(t);
    return sum;
}

Mesh build_unit_square_mesh(int n) {
    if (n < 1) throw InvalidArgument("build_unit_square_mesh: subdivision n must be >= 1");

    Mesh mesh;
    const int np = n + 1;
    mesh.nodes.reserve(static_cast<size_t>(np) * np);
    for (int j = 0; j < np; ++j)
        for (int i = 0; i < np; ++i)
            mesh.nodes.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});

    auto vid = [np](int i, int j) { return j * np + i; };
    mesh.triangles.reserve(static_cast<size_t>(2) * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = vid(i, j);
            const int v10 = vid(i + 1, j);
            const int v01 = vid(i, j + 1);
            const int v11 = vid(i + 1, j + 1);
            // diagonal v00 -> v11 in every cell, both triangles CCW
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    }
    compute_boundary_edges(mesh);
    return mesh;
}

void compute_boundary_edges(Mesh& mesh) {
    std::map<std::pair<int, int>, int> directed;  // (a,b) -> owning triangle
    for (int t = 0; t < mesh.triangle_count(); ++t) {
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<size_t>(e)];
            const int b = tri[static_cast<size_t>((e + 1) % 3)];
            if (!directed.emplace(std::make_pair(a, b), t).second)
                throw MeshError("compute_boundary_edges: duplicate directed edge, inconsistent orientation");
        }
    }
    mesh.boundary_edges.clear();
    for (const auto& [edge, tri] : directed) {
        if (directed.find({edge.second, edge.first}) == directed.end())
            mesh.boundary_edges.push_back({edge.first, edge.second, tri});
    }
}

void audit_mesh(const Mesh& mesh) {
    const int v = mesh.node_count();
    const int f = mesh.triangle_count();
    if (f == 0) throw MeshError("audit_mesh: no triangles");

    for (int t = 0; t < f; ++t) {
        for (int k = 0; k < 3; ++k) {
            const int idx = mesh.triangles[static_cast<size_t>(t)][static_cast<size_t>(k)];
            if (idx < 0 || idx >= v) throw MeshError("audit_mesh: node index out of range");
        }
        if (!(mesh.signed_area(t) > 0.0))
            throw MeshError("audit_mesh: non-positive signed area at triangle " + std::to_string(t));
    }

    // undirected edge incidence: boundary edges once, interior edges twice
    std::map<std::pair<int, int>, int> incidence;
    for (int t = 0; t < f; ++t) {
        const auto& tri = mesh.triangles[static_cast<size_t>(t)];
        for (int e = 0; e < 3; ++e) {
            const int a = tri[static_cast<size_t>(e)];
            const int b = tri[static_cast<size_t>((e + 1) % 3)];
            ++incidence[{std::min(a, b), std::max(a, b)}];
        }
    }
    int boundary_count = 0;
    for (const auto& [edge, count] : incidence) {
        if (count == 1)
            ++boundary_count;
        else if (count != 2)
            throw MeshError("audit_mesh: edge shared by " + std::to_string(count) + " triangles");
    }
    if (boundary_count != static_cast<int>(mesh.boundary_edges.size()))
        throw MeshError("audit_mesh: stored boundary edge count does not match incidence");

    for (const auto& be : mesh.boundary_edges) {
        if (incidence.find({std::min(be.a, be.b), std::max(be.a, be.b)}) == incidence.end())
            throw MeshError("audit_mesh: boundary edge not part of any triangle");
        const auto& tri = mesh.triangles[static_cast<size_t>(be.tri)];
        bool oriented = false;
        for (int e = 0; e < 3; ++e) {
            if (tri[static_cast<size_t>(e)] == be.a && tri[static_cast<size_t>((e + 1) % 3)] == be.b)
                oriented = true;
        }
        if (!oriented)
            throw MeshError("audit_mesh: boundary edge orientation inconsistent with owning triangle");
    }

    const int e = static_cast<int>(incidence.size());
    if (v - e + f != 1)
        throw MeshError("audit_mesh: Euler relation V - E + F = 1 violated");
}

Mesh load_mesh(std::istream& in) {
    std::string tag;
    int count = 0;
    Mesh mesh;
    if (!(in >> tag >> count) || tag != "nodes" || count < 3)
        throw MeshError("load_mesh: expected 'nodes K' header");
    mesh.nodes.resize(static_cast<size_t>(count));
    for (auto& node : mesh.nodes)
        if (!(in >> node.x >> node.y)) throw MeshError("load_mesh: bad node line");
    if (!(in >> tag >> count) || tag != "triangles" || count < 1)
        throw MeshError("load_mesh: expected 'triangles M' header");
    mesh.triangles.resize(static_cast<size_t>(count));
    for (auto& tri : mesh.triangles)
        if (!(in >> tri[0] >> tri[1] >> tri[2])) throw MeshError("load_mesh: bad triangle line");
    compute_boundary_edges(mesh);
    audit_mesh(mesh);
    return mesh;
}

Mesh load_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MeshError("load_mesh: cannot open " + path);
    return load_mesh(in);
}

void save_mesh(std::ostream& out, const Mesh& mesh) {
    out << "nodes " << mesh.node_count() << "\n";
    out.precision(17);
    for (const auto& node : mesh.nodes) out << node.x << " " << node.y << "\n";
    out << "triangles " << mesh.triangle_count() << "\n";
    for (const auto& tri : mesh.triangles) out << tri[0] << " " << tri[1] << " " << tri[2] << "\n";
}

void save_mesh_file(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw MeshError("save_mesh: cannot open " + path);
    save_mesh(out, mesh);
}

Region Region::disk(Vec2 center, double radius) {
    Region r;
    r.kind = Kind::Disk;
    r.center = center;
    r.radius = radius;
    return r;
}

Region Region::rect(Vec2 lo, Vec2 hi) {
    Region r;
    r.kind = Kind::Rect;
    r.lo = lo;
    r.hi = hi;
    return r;
}

Region Region::triangles(std::vector<int> indices) {
    Region r;
    r.kind = Kind::TriangleSet;
    r.triangle_set = std::move(indices);
    return r;
}

std::vector<int> resolve_region(const Mesh& mesh, const Region& region) {
    auto finite = [](double x) { return std::isfinite(x); };
    std::vector<int> result;
    switch (region.kind) {
        case Region::Kind::Disk: {
            if (!finite(region.center.x) || !finite(region.center.y) || !finite(region.radius))
                throw InvalidArgument("resolve_region: non-finite disk parameters");
            for (int t = 0; t < mesh.triangle_count(); ++t) {
                const Vec2 c = mesh.barycenter(t);
                const double dx = c.x - region.center.x;
                const double dy = c.y - region.center.y;
                if (dx * dx + dy * dy <= region.radius * region.radius) result.push_back(t);
            }
            break;
        }
        case Region::Kind::Rect: {
            if (!finite(region.lo.x) || !finite(region.lo.y) || !finite(region.hi.x) || !finite(region.hi.y))
                throw InvalidArgument("resolve_region: non-finite rectangle corners");
            for (int t = 0; t < mesh.triangle_count(); ++t) {
                const Vec2 c = mesh.barycenter(t);
                if (c.x >= region.lo.x && c.x <= region.hi.x && c.y >= region.lo.y && c.y <= region.hi.y)
                    result.push_back(t);
            }
            break;
        }
        case Region::Kind::TriangleSet: {
            result = region.triangle_set;
            std::sort(result.begin(), result.end());
            result.erase(std::unique(result.begin(), result.end()), result.end());
            for (int t : result)
                if (t < 0 || t >= mesh.triangle_count())
                    throw InvalidArgument("resolve_region: triangle index out of range");
            break;
        }
    }
    return result;
}

std::vector<int> complement_triangles(const Mesh& mesh, const std::vector<int>& tris) {
    std::vector<char> member(static_cast<size_t>(mesh.triangle_count()), 0);
    for (int t : tris) member[static_cast<size_t>(t)] = 1;
    std::vector<int> result;
    result.reserve(static_cast<size_t>(mesh.triangle_count()) - tris.size());
    for (int t = 0; t < mesh.triangle_count(); ++t)
        if (!member[static_cast<size_t>(t)]) result.push_back(t);
    return result;
}

}  // namespace ntdlab
