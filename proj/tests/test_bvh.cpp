#include <doctest.h>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gamesh/bvh.hpp"
#include "gamesh/mesh.hpp"
#include "gamesh/primitives.hpp"
#include "oracles.hpp"

using namespace gamesh;

TEST_CASE("classify_barycentric: interior / edge / vertex bands") {
    CHECK(classify_barycentric(0.3, 0.3, 0.4) == FootprintClass::interior);
    CHECK(classify_barycentric(0.0, 0.5, 0.5) == FootprintClass::on_edge);
    CHECK(classify_barycentric(0.5, 1e-10, 0.5 - 1e-10) == FootprintClass::on_edge);
    CHECK(classify_barycentric(1.0, 0.0, 0.0) == FootprintClass::on_vertex);
    CHECK(classify_barycentric(1e-10, 1.0 - 2e-10, 1e-10) == FootprintClass::on_vertex);
}

TEST_CASE("bvh: rejects empty meshes, holds every face exactly once") {
    IndexedMesh empty;
    empty.vertices = {{0, 0, 0}};
    CHECK_THROWS_WITH_AS(TriangleBVH{empty}, "TriangleBVH: mesh has no faces",
                         std::invalid_argument);

    const IndexedMesh torus = make_torus(16, 8, 0.35, 0.12);
    const TriangleBVH tree(torus);
    std::vector<int> got = tree.collect_faces();
    CHECK(static_cast<int>(got.size()) == torus.face_count());
    std::sort(got.begin(), got.end());
    for (int f = 0; f < torus.face_count(); ++f) CHECK(got[f] == f);
}

TEST_CASE("bvh: projection matches an all-faces scan bit for bit") {
    const IndexedMesh sphere = make_uv_sphere(48, 52, 0.35); // ~4.9k faces
    REQUIRE(sphere.face_count() > 4000);
    const TriangleBVH tree(sphere);

    Rng rng(2024);
    std::vector<Vec3> queries;
    queries.reserve(1000);
    for (int i = 0; i < 1000; ++i)
        queries.push_back({rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)});
    // mix in points exactly on vertices and far outside
    for (int i = 0; i < 16; ++i) queries.push_back(sphere.vertices[i * 37 % sphere.vertex_count()]);
    queries.push_back({100, 100, 100});

    const std::vector<ProjectedPoint> fast = tree.project(queries);
    REQUIRE(fast.size() == queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        const ProjectedPoint slow = oracle::brute_project(sphere, queries[i]);
        CHECK(fast[i].face == slow.face);
        CHECK(fast[i].distance2 == slow.distance2);
        CHECK(fast[i].footprint.x == slow.footprint.x);
        CHECK(fast[i].footprint.y == slow.footprint.y);
        CHECK(fast[i].footprint.z == slow.footprint.z);
        CHECK(fast[i].u == slow.u);
        CHECK(fast[i].v == slow.v);
        CHECK(fast[i].w == slow.w);
        CHECK(fast[i].classification == slow.classification);
        CHECK(fast[i].original.x == queries[i].x);
    }
}

TEST_CASE("bvh: batch projection equals one-at-a-time projection") {
    const IndexedMesh torus = make_torus(24, 12, 0.35, 0.12);
    const TriangleBVH tree(torus);
    Rng rng(5);
    std::vector<Vec3> pts;
    for (int i = 0; i < 200; ++i)
        pts.push_back({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.2, 0.2)});
    const auto batch = tree.project(pts);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const ProjectedPoint one = tree.project_one(pts[i]);
        CHECK(batch[i].face == one.face);
        CHECK(batch[i].distance2 == one.distance2);
        CHECK(batch[i].footprint.x == one.footprint.x);
    }
}

TEST_CASE("bvh: projecting a vertex lands on it with zero distance") {
    const IndexedMesh sphere = make_uv_sphere(12, 16, 0.35);
    const TriangleBVH tree(sphere);
    for (int v = 0; v < sphere.vertex_count(); v += 7) {
        const ProjectedPoint hit = tree.project_one(sphere.vertices[v]);
        CHECK(hit.distance2 == 0.0);
        CHECK(distance2(hit.footprint, sphere.vertices[v]) == 0.0);
        CHECK(hit.classification == FootprintClass::on_vertex);
    }
}
