#include <doctest.h>

#include <limits>
#include <vector>

#include "gamesh/kdtree.hpp"
#include "gamesh/primitives.hpp"
#include "oracles.hpp"

using namespace gamesh;

TEST_CASE("kd-tree: empty tree answers +inf / -1") {
    const PointKdTree tree{std::vector<Vec3>{}};
    CHECK(tree.size() == 0);
    CHECK(tree.nearest_distance2({1, 2, 3}) == std::numeric_limits<double>::infinity());
    CHECK(tree.nearest_index({1, 2, 3}) == -1);
}

TEST_CASE("kd-tree: single point") {
    const PointKdTree tree{{{1, 1, 1}}};
    CHECK(tree.nearest_distance2({1, 1, 1}) == 0.0);
    CHECK(tree.nearest_distance2({2, 1, 1}) == 1.0);
    CHECK(tree.nearest_index({0, 0, 0}) == 0);
}

TEST_CASE("kd-tree: matches a linear scan exactly, ties to the lowest index") {
    Rng rng(31337);
    std::vector<Vec3> pts;
    for (int i = 0; i < 1500; ++i)
        pts.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
    // plant exact duplicates so ties are exercised
    pts.push_back(pts[10]);
    pts.push_back(pts[500]);
    const PointKdTree tree(pts);
    CHECK(tree.size() == static_cast<int>(pts.size()));

    for (int i = 0; i < 500; ++i) {
        const Vec3 q{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
        double ref_d2 = 0.0;
        const int ref_idx = oracle::brute_nearest(pts, q, &ref_d2);
        CHECK(tree.nearest_distance2(q) == ref_d2);
        CHECK(tree.nearest_index(q) == ref_idx);
    }
    // querying a duplicated point must return the first copy
    CHECK(tree.nearest_index(pts[10]) == 10);
    CHECK(tree.nearest_index(pts[500]) == 500);
}

TEST_CASE("kd-tree: clustered + far outlier geometry") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 100; ++i) pts.push_back({i * 1e-9, 0, 0}); // tight cluster
    pts.push_back({1e6, 1e6, 1e6});
    const PointKdTree tree(pts);
    CHECK(tree.nearest_index({1e6, 1e6, 1e6 + 1}) == 100);
    double d2 = 0.0;
    const int idx = oracle::brute_nearest(pts, {50e-9, 1e-12, 0}, &d2);
    CHECK(tree.nearest_index({50e-9, 1e-12, 0}) == idx);
    CHECK(tree.nearest_distance2({50e-9, 1e-12, 0}) == d2);
}
