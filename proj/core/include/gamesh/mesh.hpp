#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gamesh/vec3.hpp"

namespace gamesh {

// Vertex index triple, 0-based, counter-clockwise winding.
using Face = std::array<int, 3>;

// Indexed face set. Deliberately tolerant: edges may have any number of
// incident faces, so non-manifold input passes through unchanged.
struct IndexedMesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;

    int vertex_count() const { return static_cast<int>(vertices.size()); }
    int face_count() const { return static_cast<int>(faces.size()); }

    struct Bounds {
        Vec3 min{0, 0, 0}, max{0, 0, 0};
        Vec3 extent() const { return max - min; }
        double diagonal() const { return norm(extent()); }
    };
    Bounds bounds() const;
};

// Unordered edge key; a != b assumed.
inline std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

struct EdgeRecord {
    int a = 0, b = 0;            // a < b
    std::vector<int> faces;      // incident face ids, ascending
};

// Static adjacency built from the face list. Construction is fully
// deterministic: rebuilding from the same mesh yields identical contents.
class AdjacencyMap {
public:
    explicit AdjacencyMap(const IndexedMesh& mesh);

    std::span<const int> vertex_faces(int v) const { return vertex_faces_[v]; }
    std::span<const int> neighbors(int v) const { return neighbors_[v]; }
    const std::vector<EdgeRecord>& edges() const { return edges_; }
    // nullptr when (a, b) is not an edge of the mesh
    const EdgeRecord* find_edge(int a, int b) const;
    int vertex_count() const { return static_cast<int>(vertex_faces_.size()); }

    bool operator==(const AdjacencyMap& o) const {
        return vertex_faces_ == o.vertex_faces_ && neighbors_ == o.neighbors_ &&
               edges_count_equal(o);
    }

private:
    bool edges_count_equal(const AdjacencyMap& o) const;

    std::vector<std::vector<int>> vertex_faces_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<EdgeRecord> edges_;  // sorted by (a, b)
};

struct FaceGeometry {
    Vec3 normal{0, 0, 0};   // unit length, zero when degenerate
    double area = 0.0;
    bool degenerate = false;
};

FaceGeometry triangle_geometry(const Vec3& a, const Vec3& b, const Vec3& c);
FaceGeometry face_geometry(const IndexedMesh& mesh, int face);

double total_area(const IndexedMesh& mesh);

// Defects are reported, never thrown; boundary and non-manifold edges are
// informational (both are legal inputs here).
struct ValidationReport {
    std::vector<int> out_of_range_faces;
    std::vector<int> repeated_index_faces;
    std::vector<int> duplicate_faces;    // later face duplicating an earlier unordered triple
    std::vector<int> degenerate_faces;   // zero-area
    std::vector<std::pair<int, int>> nonmanifold_edges;
    std::vector<std::pair<int, int>> boundary_edges;

    bool clean() const {
        return out_of_range_faces.empty() && repeated_index_faces.empty() &&
               duplicate_faces.empty() && degenerate_faces.empty();
    }
};

ValidationReport validate(const IndexedMesh& mesh);

struct TopologySummary {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int euler = 0;            // V - E + F
    int components = 0;       // isolated vertices count as their own component
    int boundary_edges = 0;
    int nonmanifold_edges = 0;
    int isolated_vertices = 0;
    bool edge_manifold = false;
    bool closed = false;
    // (2c - euler) / 2, defined only for closed edge-manifold meshes
    std::optional<int> genus;
};

TopologySummary topology_summary(const IndexedMesh& mesh);
TopologySummary topology_summary(const IndexedMesh& mesh, const AdjacencyMap& adj);

} // namespace gamesh
