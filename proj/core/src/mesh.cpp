#include "gamesh/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace gamesh {

IndexedMesh::Bounds IndexedMesh::bounds() const {
    Bounds b;
    if (vertices.empty()) return b;
    b.min = b.max = vertices[0];
    for (const Vec3& v : vertices) {
        b.min = cwise_min(b.min, v);
        b.max = cwise_max(b.max, v);
    }
    return b;
}

AdjacencyMap::AdjacencyMap(const IndexedMesh& mesh) {
    const int nv = mesh.vertex_count();
    vertex_faces_.resize(nv);
    neighbors_.resize(nv);

    std::map<std::pair<int, int>, std::vector<int>> edge_faces;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& tri = mesh.faces[f];
        for (int k = 0; k < 3; ++k) {
            vertex_faces_[tri[k]].push_back(f);
            int a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_faces[{a, b}].push_back(f);
        }
    }

    edges_.reserve(edge_faces.size());
    for (auto& [key, incident] : edge_faces) {
        std::sort(incident.begin(), incident.end());
        incident.erase(std::unique(incident.begin(), incident.end()), incident.end());
        edges_.push_back({key.first, key.second, std::move(incident)});
        neighbors_[key.first].push_back(key.second);
        neighbors_[key.second].push_back(key.first);
    }
    for (auto& nb : neighbors_) std::sort(nb.begin(), nb.end());
    // vertex_faces_ entries are already ascending (faces visited in order),
    // but a face may touch a vertex twice through a repeated index
    for (auto& vf : vertex_faces_)
        vf.erase(std::unique(vf.begin(), vf.end()), vf.end());
}

const EdgeRecord* AdjacencyMap::find_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(a, b),
                               [](const EdgeRecord& e, const std::pair<int, int>& k) {
                                   return std::make_pair(e.a, e.b) < k;
                               });
    if (it == edges_.end() || it->a != a || it->b != b) return nullptr;
    return &*it;
}

bool AdjacencyMap::edges_count_equal(const AdjacencyMap& o) const {
    if (edges_.size() != o.edges_.size()) return false;
    for (size_t i = 0; i < edges_.size(); ++i) {
        const EdgeRecord& x = edges_[i];
        const EdgeRecord& y = o.edges_[i];
        if (x.a != y.a || x.b != y.b || x.faces != y.faces) return false;
    }
    return true;
}

FaceGeometry triangle_geometry(const Vec3& a, const Vec3& b, const Vec3& c) {
    FaceGeometry g;
    const Vec3 n = cross(b - a, c - a);
    const double len = norm(n);
    g.area = 0.5 * len;
    const double lmax = std::max({norm(b - a), norm(c - a), norm(c - b)});
    if (len <= 1e-14 * lmax * lmax || lmax == 0.0) {
        g.degenerate = true;
        return g;
    }
    g.normal = n / len;
    return g;
}

FaceGeometry face_geometry(const IndexedMesh& mesh, int face) {
    const Face& f = mesh.faces[face];
    return triangle_geometry(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
}

double total_area(const IndexedMesh& mesh) {
    double area = 0.0;
    for (int f = 0; f < mesh.face_count(); ++f) area += face_geometry(mesh, f).area;
    return area;
}

ValidationReport validate(const IndexedMesh& mesh) {
    ValidationReport rep;
    const int nv = mesh.vertex_count();

    std::set<std::array<int, 3>> seen;
    std::map<std::pair<int, int>, int> edge_count;

    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& tri = mesh.faces[f];
        bool in_range = true;
        for (int k = 0; k < 3; ++k)
            if (tri[k] < 0 || tri[k] >= nv) in_range = false;
        if (!in_range) {
            rep.out_of_range_faces.push_back(f);
            continue;
        }
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
            rep.repeated_index_faces.push_back(f);
            continue;
        }

        std::array<int, 3> key = {tri[0], tri[1], tri[2]};
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) rep.duplicate_faces.push_back(f);

        if (face_geometry(mesh, f).degenerate) rep.degenerate_faces.push_back(f);

        for (int k = 0; k < 3; ++k) {
            int a = tri[k], b = tri[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }

    for (const auto& [e, c] : edge_count) {
        if (c == 1) rep.boundary_edges.push_back(e);
        else if (c > 2) rep.nonmanifold_edges.push_back(e);
    }
    return rep;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

TopologySummary topology_summary(const IndexedMesh& mesh, const AdjacencyMap& adj) {
    TopologySummary t;
    t.vertices = mesh.vertex_count();
    t.faces = mesh.face_count();
    t.edges = static_cast<int>(adj.edges().size());
    t.euler = t.vertices - t.edges + t.faces;

    for (const EdgeRecord& e : adj.edges()) {
        const int deg = static_cast<int>(e.faces.size());
        if (deg == 1) ++t.boundary_edges;
        else if (deg > 2) ++t.nonmanifold_edges;
    }
    t.edge_manifold = t.nonmanifold_edges == 0;
    t.closed = t.boundary_edges == 0 && t.nonmanifold_edges == 0 && t.faces > 0;

    UnionFind uf(t.vertices);
    for (const EdgeRecord& e : adj.edges()) uf.unite(e.a, e.b);
    std::set<int> roots;
    for (int v = 0; v < t.vertices; ++v) roots.insert(uf.find(v));
    t.components = static_cast<int>(roots.size());

    for (int v = 0; v < t.vertices; ++v)
        if (adj.vertex_faces(v).empty() && adj.neighbors(v).empty()) ++t.isolated_vertices;

    if (t.closed && t.edge_manifold && t.isolated_vertices == 0) {
        const int twice_genus = 2 * t.components - t.euler;
        if (twice_genus >= 0 && twice_genus % 2 == 0) t.genus = twice_genus / 2;
    }
    return t;
}

TopologySummary topology_summary(const IndexedMesh& mesh) {
    return topology_summary(mesh, AdjacencyMap(mesh));
}

} // namespace gamesh
