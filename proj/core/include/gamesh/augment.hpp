#pragma once

#include <cstdint>
#include <vector>

#include "gamesh/bvh.hpp"
#include "gamesh/mesh.hpp"

namespace gamesh {

// The prior with the projected points inserted into its connectivity.
// Label 1 marks surviving prior vertices, label 0 marks vertices that carry
// an input point (either appended, or a prior vertex a point substituted).
struct AugmentedMesh {
    IndexedMesh mesh;
    std::vector<std::uint8_t> labels;
    std::vector<int> source_point;            // input point index per vertex, -1 for label 1
    std::vector<ProjectedPoint> projections;  // per input point, post-perturbation

    int substitutions = 0;   // prior vertices replaced by coincident points
    int exact_fallbacks = 0; // faces the grid method handed to the exact triangulator
    int merged_sites = 0;    // near-coincident in-face sites folded and re-spliced
    int max_grid_res = 0;    // largest resolution any face ended up needing

    int label0_count() const {
        int n = 0;
        for (auto l : labels) n += l == 0;
        return n;
    }
};

struct PerturbResult {
    // aligned with the input; every non-substituted entry is strictly
    // interior to its face (all barycentric components >= epsilon)
    std::vector<ProjectedPoint> points;
    // prior vertex the point stands in for, or -1; at most one point per vertex
    std::vector<int> substituted_vertex;
};

// Resolves on-edge / on-vertex footprints: a point within snap_tol of a prior
// vertex becomes a substitution for it (zero motion); anything else lands in
// its lowest-index incident face with barycentrics clamped to >= epsilon.
PerturbResult perturb_boundary_points(const IndexedMesh& prior, const AdjacencyMap& adj,
                                      const std::vector<ProjectedPoint>& projected,
                                      double epsilon, double snap_tol);

// Rebuilds every face that received points via the in-face triangulation
// (faces without points are copied verbatim). grid_res 0 picks the automatic
// per-face resolution. Deterministic and independent of input point order:
// per-face sites are canonically ordered before triangulation.
AugmentedMesh augment(const IndexedMesh& prior, const PerturbResult& perturbed, int grid_res);

} // namespace gamesh
