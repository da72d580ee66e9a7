#include "gamesh/bvh.hpp"

#include <algorithm>
#include <stdexcept>

#include "gamesh/parallel.hpp"

namespace gamesh {

const char* to_string(FootprintClass c) {
    switch (c) {
        case FootprintClass::interior: return "interior";
        case FootprintClass::on_edge: return "on-edge";
        case FootprintClass::on_vertex: return "on-vertex";
    }
    return "?";
}

FootprintClass classify_barycentric(double u, double v, double w) {
    const double eps = 1e-9;
    const int zeros = (u < eps) + (v < eps) + (w < eps);
    if (zeros >= 2) return FootprintClass::on_vertex;
    if (zeros == 1) return FootprintClass::on_edge;
    return FootprintClass::interior;
}

namespace {

constexpr int kLeafSize = 4;

double box_distance2(const Vec3& p, const Vec3& bmin, const Vec3& bmax) {
    double d2 = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double lo = bmin[k] - p[k];
        const double hi = p[k] - bmax[k];
        if (lo > 0) d2 += lo * lo;
        else if (hi > 0) d2 += hi * hi;
    }
    return d2;
}

} // namespace

TriangleBVH::TriangleBVH(const IndexedMesh& mesh) : mesh_(&mesh) {
    if (mesh.faces.empty()) throw std::invalid_argument("TriangleBVH: mesh has no faces");

    const int nf = mesh.face_count();
    face_order_.resize(nf);
    std::vector<Vec3> centroids(nf);
    for (int f = 0; f < nf; ++f) {
        face_order_[f] = f;
        const Face& tri = mesh.faces[f];
        centroids[f] = (mesh.vertices[tri[0]] + mesh.vertices[tri[1]] + mesh.vertices[tri[2]]) / 3.0;
    }
    nodes_.reserve(2 * nf);
    build(0, nf, centroids);
}

int TriangleBVH::build(int first, int count, std::vector<Vec3>& centroids) {
    const int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});

    Vec3 bmin = mesh_->vertices[mesh_->faces[face_order_[first]][0]];
    Vec3 bmax = bmin;
    Vec3 cmin = centroids[face_order_[first]], cmax = cmin;
    for (int i = first; i < first + count; ++i) {
        const Face& tri = mesh_->faces[face_order_[i]];
        for (int k = 0; k < 3; ++k) {
            bmin = cwise_min(bmin, mesh_->vertices[tri[k]]);
            bmax = cwise_max(bmax, mesh_->vertices[tri[k]]);
        }
        cmin = cwise_min(cmin, centroids[face_order_[i]]);
        cmax = cwise_max(cmax, centroids[face_order_[i]]);
    }
    nodes_[id].bmin = bmin;
    nodes_[id].bmax = bmax;

    const Vec3 spread = cmax - cmin;
    int axis = 0;
    if (spread.y > spread[axis]) axis = 1;
    if (spread.z > spread[axis]) axis = 2;

    if (count <= kLeafSize || spread[axis] == 0.0) {
        nodes_[id].first = first;
        nodes_[id].count = count;
        std::sort(face_order_.begin() + first, face_order_.begin() + first + count);
        return id;
    }

    const int mid = first + count / 2;
    // centroid with face-index tie-break: the partition is unique for a given mesh
    std::nth_element(face_order_.begin() + first, face_order_.begin() + mid,
                     face_order_.begin() + first + count, [&](int fa, int fb) {
                         const double ca = centroids[fa][axis], cb = centroids[fb][axis];
                         return ca < cb || (ca == cb && fa < fb);
                     });

    const int left = build(first, mid - first, centroids);
    const int right = build(mid, first + count - mid, centroids);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

ProjectedPoint TriangleBVH::project_one(const Vec3& p) const {
    ProjectedPoint best;
    best.original = p;
    best.distance2 = -1.0;  // unset

    int stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (best.distance2 >= 0.0 && box_distance2(p, node.bmin, node.bmax) > best.distance2)
            continue;

        if (node.count > 0) {
            for (int i = node.first; i < node.first + node.count; ++i) {
                const int f = face_order_[i];
                const Face& tri = mesh_->faces[f];
                const TrianglePoint cp = closest_point_on_triangle(
                    p, mesh_->vertices[tri[0]], mesh_->vertices[tri[1]], mesh_->vertices[tri[2]]);
                const double d2 = distance2(p, cp.position);
                if (best.distance2 < 0.0 || d2 < best.distance2 ||
                    (d2 == best.distance2 && f < best.face)) {
                    best.footprint = cp.position;
                    best.face = f;
                    best.u = cp.u;
                    best.v = cp.v;
                    best.w = cp.w;
                    best.distance2 = d2;
                }
            }
            continue;
        }

        // near child first; the far child survives unless strictly beaten later
        const double dl = box_distance2(p, nodes_[node.left].bmin, nodes_[node.left].bmax);
        const double dr = box_distance2(p, nodes_[node.right].bmin, nodes_[node.right].bmax);
        if (dl <= dr) {
            stack[top++] = node.right;
            stack[top++] = node.left;
        } else {
            stack[top++] = node.left;
            stack[top++] = node.right;
        }
    }

    best.classification = classify_barycentric(best.u, best.v, best.w);
    return best;
}

std::vector<ProjectedPoint> TriangleBVH::project(const std::vector<Vec3>& points) const {
    std::vector<ProjectedPoint> out(points.size());
    parallel_for(static_cast<std::int64_t>(points.size()),
                 [&](std::int64_t i) { out[i] = project_one(points[i]); });
    return out;
}

std::vector<int> TriangleBVH::collect_faces() const {
    std::vector<int> faces;
    faces.reserve(face_order_.size());
    for (const Node& node : nodes_)
        for (int i = node.first; i < node.first + node.count; ++i)
            faces.push_back(face_order_[i]);
    return faces;
}

IndexedMesh::Bounds TriangleBVH::root_bounds() const {
    return {nodes_[0].bmin, nodes_[0].bmax};
}

} // namespace gamesh
