#include <benchmark/benchmark.h>

#include <vector>

#include "gamesh/bvh.hpp"
#include "gamesh/mesh.hpp"
#include "gamesh/pipeline.hpp"
#include "gamesh/primitives.hpp"
#include "gamesh/triangulate.hpp"

using namespace gamesh;

namespace {

std::vector<Vec3> scatter(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Vec3> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i)
        pts.push_back({rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    return pts;
}

const IndexedMesh& prior_5k() {
    static const IndexedMesh mesh = make_uv_sphere(48, 52, 0.35);
    return mesh;
}

} // namespace

// Projection cost as the point count sweeps 50 -> 20000 (the near-linearity
// of interest is items_per_second staying flat).
static void BM_project(benchmark::State& state) {
    const TriangleBVH tree(prior_5k());
    const std::vector<Vec3> pts = scatter(static_cast<int>(state.range(0)), 7);
    for (auto _ : state) {
        auto hits = tree.project(pts);
        benchmark::DoNotOptimize(hits.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_project)->Arg(50)->Arg(500)->Arg(2000)->Arg(20000);

static void BM_bvh_build(benchmark::State& state) {
    for (auto _ : state) {
        TriangleBVH tree(prior_5k());
        benchmark::DoNotOptimize(tree.node_count());
    }
}
BENCHMARK(BM_bvh_build);

// One face's grid triangulation across site densities.
static void BM_triangulate_face(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    Rng rng(13);
    std::vector<Vec2> sites;
    while (static_cast<int>(sites.size()) < k) {
        double u = rng.uniform(), v = rng.uniform();
        if (u + v >= 1.0) { u = 1.0 - u; v = 1.0 - v; }
        const double w = 1.0 - u - v;
        if (u < 1e-3 || v < 1e-3 || w < 1e-3) continue;
        sites.push_back(equilateral_point(u, v, w));
    }
    for (auto _ : state) {
        FaceTriangulation ft = triangulate_face(sites, 256);
        benchmark::DoNotOptimize(ft.triangles.data());
    }
}
BENCHMARK(BM_triangulate_face)->Arg(2)->Arg(8)->Arg(32);

static void BM_pipeline(benchmark::State& state) {
    const std::vector<Vec3> pts = scatter(static_cast<int>(state.range(0)), 21);
    for (auto _ : state) {
        PipelineConfig cfg;
        IndexedMesh out;
        RunReport rep = run_gamesh(prior_5k(), pts, cfg, out);
        benchmark::DoNotOptimize(rep.output_vertex_count);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_pipeline)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
