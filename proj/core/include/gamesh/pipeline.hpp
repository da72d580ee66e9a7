#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gamesh/mesh.hpp"
#include "gamesh/metrics.hpp"

namespace gamesh {

struct PipelineConfig {
    std::string prior_path;
    std::string points_path;
    std::string output_path;
    int grid_res = 0;       // 0 = per-face automatic resolution
    double epsilon = 1e-6;  // barycentric nudge for on-edge / on-vertex points
    double snap_tol = 1e-9; // vertex-substitution tolerance, relative to the prior diagonal
    std::uint64_t seed = 0;
    bool compute_metrics = false; // evaluate output against the prior
    MetricsConfig metrics;
    int verbosity = 0; // >= 1 prints stage progress to stderr
};

struct StageTimings {
    double project = 0.0; // seconds
    double augment = 0.0;
    double simplify = 0.0;
    double unproject = 0.0;
    double total = 0.0;
};

struct RunReport {
    int point_count = 0;
    int prior_vertex_count = 0;
    int prior_face_count = 0;
    int augmented_vertex_count = 0;
    int augmented_face_count = 0;
    int output_vertex_count = 0;
    int output_face_count = 0;

    int substituted_vertices = 0;
    int merged_sites = 0;
    int exact_fallbacks = 0;
    int max_grid_res = 0;

    long long collapses = 0;
    int skipped = 0; // collapses pushed back for later because of a flip/orphan hazard
    int forced = 0;
    int flips_forced = 0;
    int rerouted = 0;
    int orphaned = 0;
    int isolated_dropped = 0;
    int duplicates_removed = 0;
    int degenerate_removed = 0;

    StageTimings timings;
    TopologySummary prior_topology;
    TopologySummary output_topology;
    double unreferenced_pct = 0.0;

    MetricsReport metrics; // meaningful only when metrics_valid
    bool metrics_valid = false;
};

/// The full in-memory pipeline: project the points onto the prior, perturb
/// boundary footprints, rebuild the touched faces around them, collapse every
/// prior vertex away, and restore the points to their original positions.
/// The output mesh's vertex i is input point i, exactly.
RunReport run_gamesh(const IndexedMesh& prior, const std::vector<Vec3>& points,
                     const PipelineConfig& config, IndexedMesh& output);

/// File-based wrapper: reads prior_path and points_path, writes output_path.
RunReport run_gamesh(const PipelineConfig& config);

/// Renders the report as JSON ("schema": 1). Timings are wall-clock and vary
/// run to run; byte-identical comparisons should drop the "timings" object.
std::string report_to_json(const RunReport& report);

/// JSON rendering of a topology summary (genus is null when undefined).
std::string topology_to_json(const TopologySummary& topology);

} // namespace gamesh
