#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "gamesh/augment.hpp"
#include "gamesh/bvh.hpp"
#include "gamesh/mesh.hpp"
#include "gamesh/primitives.hpp"
#include "oracles.hpp"

using namespace gamesh;

namespace {

IndexedMesh tetrahedron() {
    IndexedMesh m;
    m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    m.faces = {{0, 2, 1}, {0, 1, 3}, {1, 2, 3}, {0, 3, 2}};
    return m;
}

AugmentedMesh augment_points(const IndexedMesh& prior, const std::vector<Vec3>& pts,
                             int grid_res = 0) {
    const TriangleBVH tree(prior);
    const AdjacencyMap adj(prior);
    const PerturbResult perturbed =
        perturb_boundary_points(prior, adj, tree.project(pts), 1e-6, 1e-9);
    return augment(prior, perturbed, grid_res);
}

} // namespace

TEST_CASE("augment: one interior point splits its face into three") {
    const IndexedMesh prior = tetrahedron();
    const Vec3 centroid = (prior.vertices[0] + prior.vertices[2] + prior.vertices[1]) * (1.0 / 3);
    const AugmentedMesh am = augment_points(prior, {centroid});

    CHECK(am.mesh.vertex_count() == 5);
    CHECK(am.mesh.face_count() == 6);
    const TopologySummary topo = topology_summary(am.mesh);
    CHECK(topo.euler == 2);
    CHECK(topo.components == 1);
    CHECK(topo.closed);
    CHECK(am.label0_count() == 1);
    CHECK(am.labels.size() == 5);
    CHECK(am.source_point[4] == 0);
    for (int v = 0; v < 4; ++v) CHECK(am.source_point[v] == -1);
    CHECK(am.substitutions == 0);
}

TEST_CASE("augment: surface area is conserved") {
    const IndexedMesh prior = make_torus(16, 8, 0.35, 0.12);
    Rng rng(88);
    std::vector<Vec3> pts;
    for (int i = 0; i < 120; ++i)
        pts.push_back({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2)});
    const AugmentedMesh am = augment_points(prior, pts);
    const double before = total_area(prior);
    const double after = total_area(am.mesh);
    CHECK(std::abs(after - before) <= 1e-9 * before);
    CHECK(am.mesh.vertex_count() == prior.vertex_count() + 120 - am.substitutions);
    CHECK(topology_summary(am.mesh).euler == 0);
}

TEST_CASE("augment: points equal to the prior vertices substitute, not split") {
    const IndexedMesh prior = make_uv_sphere(8, 12, 0.35);
    std::vector<Vec3> pts(prior.vertices.begin(), prior.vertices.begin() + 20);
    const AugmentedMesh am = augment_points(prior, pts);
    CHECK(am.substitutions == 20);
    CHECK(am.mesh.vertex_count() == prior.vertex_count());
    CHECK(oracle::face_set(am.mesh) == oracle::face_set(prior));
    // substituted vertices carry label 0 and remember their point
    int label0 = 0;
    for (std::size_t v = 0; v < am.labels.size(); ++v) {
        if (am.labels[v] == 0) {
            ++label0;
            CHECK(am.source_point[v] >= 0);
            CHECK(distance2(am.mesh.vertices[v], pts[am.source_point[v]]) == 0.0);
        }
    }
    CHECK(label0 == 20);
}

TEST_CASE("augment: on-edge and near-vertex queries are resolved cleanly") {
    const IndexedMesh prior = tetrahedron();
    const TriangleBVH tree(prior);
    const AdjacencyMap adj(prior);

    // exactly on an edge midpoint, and a hair away from vertex 1
    const std::vector<Vec3> pts = {{0.5, 0.5, 0.0}, {1.0 - 1e-12, 1e-13, 0.0}};
    const PerturbResult pr = perturb_boundary_points(prior, adj, tree.project(pts), 1e-6, 1e-9);

    CHECK(pr.substituted_vertex[1] == 1); // snapped: within 1e-9 of vertex 1
    CHECK(pr.substituted_vertex[0] == -1);
    const ProjectedPoint& moved = pr.points[0];
    CHECK(moved.u >= 1e-6);
    CHECK(moved.v >= 1e-6);
    CHECK(moved.w >= 1e-6);

    const AugmentedMesh am = augment(prior, pr, 0);
    CHECK(am.mesh.vertex_count() == 5); // one substitution + one insertion
    CHECK(am.substitutions == 1);
    CHECK(topology_summary(am.mesh).euler == 2);
    CHECK(validate(am.mesh).clean());
}

TEST_CASE("augment: result does not depend on input point order") {
    const IndexedMesh prior = make_torus(12, 6, 0.35, 0.12);
    Rng rng(321);
    std::vector<Vec3> pts;
    for (int i = 0; i < 60; ++i)
        pts.push_back({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2)});

    const AugmentedMesh base = augment_points(prior, pts);

    std::vector<int> perm = oracle::shuffled_indices(static_cast<int>(pts.size()), 99);
    std::vector<Vec3> shuffled(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) shuffled[i] = pts[perm[i]];
    const AugmentedMesh again = augment_points(prior, shuffled);

    CHECK(base.mesh.vertex_count() == again.mesh.vertex_count());
    CHECK(base.mesh.face_count() == again.mesh.face_count());

    // map vertices of `again` into `base` indexing via point identity
    std::vector<int> remap(again.mesh.vertex_count(), -1);
    std::vector<int> base_vertex_of_point(pts.size(), -1);
    for (int v = 0; v < base.mesh.vertex_count(); ++v)
        if (base.source_point[v] >= 0) base_vertex_of_point[base.source_point[v]] = v;
    for (int v = 0; v < again.mesh.vertex_count(); ++v) {
        if (again.source_point[v] >= 0)
            remap[v] = base_vertex_of_point[perm[again.source_point[v]]];
    }
    // label-1 vertices keep prior positions; match them by exact coordinates
    for (int v = 0; v < again.mesh.vertex_count(); ++v) {
        if (remap[v] >= 0) continue;
        for (int u = 0; u < base.mesh.vertex_count(); ++u) {
            if (base.labels[u] == 1 && base.mesh.vertices[u].x == again.mesh.vertices[v].x &&
                base.mesh.vertices[u].y == again.mesh.vertices[v].y &&
                base.mesh.vertices[u].z == again.mesh.vertices[v].z) {
                remap[v] = u;
                break;
            }
        }
        REQUIRE(remap[v] >= 0);
    }
    IndexedMesh relabeled = again.mesh;
    for (Face& f : relabeled.faces)
        for (int e = 0; e < 3; ++e) f[e] = remap[f[e]];
    CHECK(oracle::face_set(relabeled) == oracle::face_set(base.mesh));
}

TEST_CASE("augment: no points leaves the prior untouched") {
    const IndexedMesh prior = make_torus(10, 5, 0.35, 0.12);
    const AugmentedMesh am = augment_points(prior, {});
    CHECK(am.mesh.vertex_count() == prior.vertex_count());
    CHECK(oracle::face_set(am.mesh) == oracle::face_set(prior));
    CHECK(am.label0_count() == 0);
}
