#pragma once

#include <vector>

#include "gamesh/mesh.hpp"
#include "gamesh/vec3.hpp"

namespace gamesh {

/// Area-weighted random surface samples, tagged with where they came from.
struct SampledCloud {
    std::vector<Vec3> points;
    std::vector<int> faces;  // face each point lies on
    int mesh_id = 0;
};

/// Draws n points uniformly (by area) from the surface: the face is picked by
/// cumulative-area inversion, the position by square-root barycentric warp.
/// Deterministic for a fixed seed. Throws std::invalid_argument when n < 1 or
/// the mesh has zero total area.
SampledCloud sample_surface(const IndexedMesh& mesh, int n, std::uint64_t seed, int mesh_id = 0);

/// Mean over P of the min squared distance to Q, plus the same with the roles
/// swapped. Throws std::invalid_argument when either cloud is empty.
double chamfer(const std::vector<Vec3>& p, const std::vector<Vec3>& q);

/// F1 as a percentage: precision is the share of q within squared distance tau
/// of p, recall the mirror image, combined as 2PR/(P+R) (0 when P+R=0).
/// Throws std::invalid_argument when either cloud is empty or tau <= 0.
double f1_score(const std::vector<Vec3>& p, const std::vector<Vec3>& q, double tau);

/// Sum over P of min squared distance to a fresh n-point sample of m2, plus
/// sum over Q of min squared distance to an n-point sample of m1. Both meshes
/// are sampled with the same seed, so feeding a mesh its own sample is exact 0.
double mesh_loss(const IndexedMesh& m1, const std::vector<Vec3>& p, const IndexedMesh& m2,
                 const std::vector<Vec3>& q, int n, std::uint64_t seed);

/// Percentage of points that do not appear (within 1e-9) as a face-referenced
/// vertex of the mesh. Empty point set yields 0.
double unreferenced_fraction(const std::vector<Vec3>& points, const IndexedMesh& mesh);

struct MetricsConfig {
    int sample_count = 10000;
    double tau = 1e-4;   // threshold on squared distance
    double scale = 0.57; // coordinate scale applied to both meshes before sampling
    std::uint64_t seed = 0;
};

struct MetricsReport {
    double chamfer = 0.0;
    double f1_tau = 0.0;
    double f1_2tau = 0.0;
    double unreferenced_fraction = 0.0;
    bool unreferenced_valid = false; // false when no point set was supplied
    MetricsConfig config;
};

/// Scales both meshes' coordinates once, samples each (ground truth with the
/// config seed, prediction with a decorrelated one), and reports chamfer plus
/// F1 at tau and 2*tau. When `points` is non-null, also reports how many of
/// them the (unscaled) prediction left unreferenced.
MetricsReport evaluate(const IndexedMesh& ground_truth, const IndexedMesh& prediction,
                       const std::vector<Vec3>* points, const MetricsConfig& config);

} // namespace gamesh
