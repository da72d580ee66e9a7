#include "gamesh/pipeline.hpp"

#include <chrono>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "gamesh/augment.hpp"
#include "gamesh/bvh.hpp"
#include "gamesh/io.hpp"
#include "gamesh/simplify.hpp"

namespace gamesh {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void validate(const IndexedMesh& prior, const std::vector<Vec3>& points,
              const PipelineConfig& config) {
    if (prior.faces.empty()) throw std::runtime_error("no faces");
    if (points.empty()) throw std::runtime_error("no points");
    if (config.epsilon <= 0.0) throw std::invalid_argument("epsilon must be positive");
    if (config.snap_tol <= 0.0) throw std::invalid_argument("snap tolerance must be positive");
    if (config.grid_res < 0) throw std::invalid_argument("grid resolution must be >= 0");
}

[[noreturn]] void rethrow_tagged(const char* stage, const std::exception& e) {
    throw std::runtime_error(std::string(stage) + ": " + e.what());
}

nlohmann::json topology_json(const TopologySummary& t) {
    nlohmann::json j;
    j["vertices"] = t.vertices;
    j["edges"] = t.edges;
    j["faces"] = t.faces;
    j["euler"] = t.euler;
    j["components"] = t.components;
    j["boundary_edges"] = t.boundary_edges;
    j["nonmanifold_edges"] = t.nonmanifold_edges;
    j["isolated_vertices"] = t.isolated_vertices;
    j["edge_manifold"] = t.edge_manifold;
    j["closed"] = t.closed;
    if (t.genus.has_value())
        j["genus"] = *t.genus;
    else
        j["genus"] = nullptr;
    return j;
}

} // namespace

RunReport run_gamesh(const IndexedMesh& prior, const std::vector<Vec3>& points,
                     const PipelineConfig& config, IndexedMesh& output) {
    validate(prior, points, config);

    RunReport report;
    report.point_count = static_cast<int>(points.size());
    report.prior_vertex_count = prior.vertex_count();
    report.prior_face_count = prior.face_count();
    report.prior_topology = topology_summary(prior);

    const auto log_stage = [&](const char* name) {
        if (config.verbosity >= 1) std::cerr << "[gamesh] " << name << "\n";
    };
    const Clock::time_point start = Clock::now();

    // project
    log_stage("project");
    Clock::time_point t = Clock::now();
    std::vector<ProjectedPoint> projected;
    try {
        const TriangleBVH bvh(prior);
        projected = bvh.project(points);
    } catch (const std::exception& e) {
        rethrow_tagged("project", e);
    }
    report.timings.project = seconds_since(t);

    // augment (perturb + per-face rebuild)
    log_stage("augment");
    t = Clock::now();
    AugmentedMesh aug;
    try {
        const AdjacencyMap adj(prior);
        const double snap_abs = config.snap_tol * prior.bounds().diagonal();
        const PerturbResult perturbed =
            perturb_boundary_points(prior, adj, projected, config.epsilon, snap_abs);
        aug = augment(prior, perturbed, config.grid_res);
    } catch (const std::exception& e) {
        rethrow_tagged("augment", e);
    }
    report.timings.augment = seconds_since(t);
    report.augmented_vertex_count = aug.mesh.vertex_count();
    report.augmented_face_count = aug.mesh.face_count();
    report.substituted_vertices = aug.substitutions;
    report.merged_sites = aug.merged_sites;
    report.exact_fallbacks = aug.exact_fallbacks;
    report.max_grid_res = aug.max_grid_res;

    // simplify
    log_stage("simplify");
    t = Clock::now();
    SimplifyResult sim;
    try {
        sim = simplify(aug);
    } catch (const std::exception& e) {
        rethrow_tagged("simplify", e);
    }
    report.timings.simplify = seconds_since(t);
    report.collapses = static_cast<long long>(sim.log.records.size());
    report.skipped = sim.log.deferred;
    report.forced = sim.log.forced;
    report.flips_forced = sim.log.flips_forced;
    report.rerouted = sim.log.rerouted;
    report.orphaned = sim.log.orphaned;
    report.isolated_dropped = sim.log.isolated_dropped;
    report.duplicates_removed = sim.log.duplicates_removed;
    report.degenerate_removed = sim.log.degenerate_removed;

    // unproject
    log_stage("unproject");
    t = Clock::now();
    try {
        output = unproject(sim.mesh, aug.projections);
    } catch (const std::exception& e) {
        rethrow_tagged("unproject", e);
    }
    report.timings.unproject = seconds_since(t);
    report.timings.total = seconds_since(start);

    if (output.vertex_count() != static_cast<int>(points.size()))
        throw std::logic_error("output vertex count diverged from input point count");

    report.output_vertex_count = output.vertex_count();
    report.output_face_count = output.face_count();
    report.output_topology = topology_summary(output);
    report.unreferenced_pct = unreferenced_fraction(points, output);

    if (config.compute_metrics) {
        MetricsConfig mc = config.metrics;
        mc.seed = config.seed;
        report.metrics = evaluate(prior, output, &points, mc);
        report.metrics_valid = true;
    }
    return report;
}

RunReport run_gamesh(const PipelineConfig& config) {
    if (config.prior_path.empty()) throw std::invalid_argument("prior path is empty");
    if (config.points_path.empty()) throw std::invalid_argument("points path is empty");
    if (config.output_path.empty()) throw std::invalid_argument("output path is empty");

    const IndexedMesh prior = read_mesh(config.prior_path);
    const std::vector<Vec3> points = read_points(config.points_path);
    IndexedMesh output;
    RunReport report = run_gamesh(prior, points, config, output);
    write_mesh(output, config.output_path);
    return report;
}

std::string topology_to_json(const TopologySummary& topology) {
    return topology_json(topology).dump(2);
}

std::string report_to_json(const RunReport& report) {
    nlohmann::json j;
    j["schema"] = 1;
    j["counts"] = {{"points", report.point_count},
                   {"prior_vertices", report.prior_vertex_count},
                   {"prior_faces", report.prior_face_count},
                   {"augmented_vertices", report.augmented_vertex_count},
                   {"augmented_faces", report.augmented_face_count},
                   {"output_vertices", report.output_vertex_count},
                   {"output_faces", report.output_face_count}};
    j["augment"] = {{"substituted_vertices", report.substituted_vertices},
                    {"merged_sites", report.merged_sites},
                    {"exact_fallbacks", report.exact_fallbacks},
                    {"max_grid_res", report.max_grid_res}};
    j["collapse"] = {{"collapses", report.collapses},
                     {"skipped", report.skipped},
                     {"forced", report.forced},
                     {"flips_forced", report.flips_forced},
                     {"rerouted", report.rerouted},
                     {"orphaned", report.orphaned},
                     {"isolated_dropped", report.isolated_dropped},
                     {"duplicates_removed", report.duplicates_removed},
                     {"degenerate_removed", report.degenerate_removed}};
    j["timings"] = {{"project", report.timings.project},
                    {"augment", report.timings.augment},
                    {"simplify", report.timings.simplify},
                    {"unproject", report.timings.unproject},
                    {"total", report.timings.total}};
    j["prior_topology"] = topology_json(report.prior_topology);
    j["output_topology"] = topology_json(report.output_topology);
    j["unreferenced_pct"] = report.unreferenced_pct;
    if (report.metrics_valid) {
        j["metrics"] = {{"chamfer", report.metrics.chamfer},
                        {"f1_tau", report.metrics.f1_tau},
                        {"f1_2tau", report.metrics.f1_2tau},
                        {"unreferenced_pct", report.metrics.unreferenced_fraction},
                        {"samples", report.metrics.config.sample_count},
                        {"tau", report.metrics.config.tau},
                        {"scale", report.metrics.config.scale},
                        {"seed", report.metrics.config.seed}};
    }
    return j.dump(2);
}

} // namespace gamesh
