#pragma once

#include <vector>

#include "gamesh/augment.hpp"
#include "gamesh/mesh.hpp"

namespace gamesh {

// Edge collapse cost: e^(l1+l2) * squared edge length. Edges between two
// projected points (labels 0-0) are never collapsible and throw.
double collapse_cost(const Vec3& v1, const Vec3& v2, int l1, int l2);

struct CollapseRecord {
    int keep = -1, dead = -1;
    Vec3 placement{0, 0, 0};
    bool forced = false;            // executed in the force phase
    bool would_have_flipped = false;
};

struct CollapseLog {
    std::vector<CollapseRecord> records;
    int deferred = 0;         // flip-risk pops sent back with doubled cost
    int forced = 0;           // collapses executed ignoring the flip guard
    int flips_forced = 0;     // of those, how many actually flipped a face
    int rerouted = 0;         // forced collapses moved to a safer edge of the same vertex
    int orphaned = 0;         // collapses that unreferenced a point vertex anyway
    int isolated_dropped = 0; // edgeless prior vertices discarded with a warning
    int duplicates_removed = 0;
    int degenerate_removed = 0;
};

struct SimplifyResult {
    // only point-carrying vertices, reordered so vertex i holds input point i
    IndexedMesh mesh;
    CollapseLog log;
};

// Removes every label-1 vertex by cost-ordered collapses: 1-1 edges meet at
// their midpoint (still label 1), 0-1 edges keep the projected endpoint.
// Collapses that would flip a surviving face are deferred and, once the heap
// drains, forced. Deterministic: heap ties break on the (low, high) vertex
// index pair.
SimplifyResult simplify(const AugmentedMesh& aug);

// Re-applies a recorded collapse sequence to the same augmented mesh;
// reproduces simplify()'s mesh exactly.
IndexedMesh replay(const AugmentedMesh& aug, const CollapseLog& log);

// Moves vertex i to origins[i].original. Connectivity is untouched.
IndexedMesh unproject(const IndexedMesh& mesh, const std::vector<ProjectedPoint>& origins);

// Standard quadric-error decimation with flip and link-condition guards, for
// preparing mesh priors. Stops early (above the target) when no legal
// collapse remains.
IndexedMesh simplify_quadric(const IndexedMesh& mesh, int target_vertices);

} // namespace gamesh
