#pragma once

#include <vector>

#include "gamesh/mesh.hpp"
#include "gamesh/primitives.hpp"
#include "gamesh/vec3.hpp"

namespace gamesh {

enum class FootprintClass { interior, on_edge, on_vertex };

const char* to_string(FootprintClass c);

// Barycentric components below 1e-9 count as zero: one zero puts the point on
// an edge, two put it on a vertex.
FootprintClass classify_barycentric(double u, double v, double w);

struct ProjectedPoint {
    Vec3 original{0, 0, 0};   // the query point, kept verbatim for unprojection
    Vec3 footprint{0, 0, 0};  // nearest point on the surface
    int face = -1;
    double u = 0, v = 0, w = 0;  // barycentric weights on that face
    double distance2 = 0;
    FootprintClass classification = FootprintClass::interior;
};

// Static bounding-volume hierarchy over the faces of one mesh. Queries run
// exact branch-and-bound: a subtree is skipped only when its box is strictly
// farther than the best hit, and equal distances resolve to the lowest face
// index, so the answer never depends on traversal or build order and matches
// an all-faces scan bit for bit.
class TriangleBVH {
public:
    // keeps a reference to the mesh; the mesh must outlive the tree
    explicit TriangleBVH(const IndexedMesh& mesh);

    ProjectedPoint project_one(const Vec3& p) const;
    // parallel over points (safe: the tree is immutable)
    std::vector<ProjectedPoint> project(const std::vector<Vec3>& points) const;

    const IndexedMesh& mesh() const { return *mesh_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    // face ids in leaf order; a well-formed tree holds each exactly once
    std::vector<int> collect_faces() const;
    IndexedMesh::Bounds root_bounds() const;

private:
    struct Node {
        Vec3 bmin{0, 0, 0}, bmax{0, 0, 0};
        int left = -1, right = -1;  // children, -1 for leaves
        int first = 0, count = 0;   // leaf slice of face_order_
    };

    int build(int first, int count, std::vector<Vec3>& centroids);

    const IndexedMesh* mesh_;
    std::vector<Node> nodes_;
    std::vector<int> face_order_;
};

} // namespace gamesh
