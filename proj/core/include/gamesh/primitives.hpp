#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gamesh/mesh.hpp"
#include "gamesh/vec3.hpp"

namespace gamesh {

// Deterministic random source. mt19937_64 has a standard-specified output
// sequence and the double conversion below is exact, so any seed reproduces
// the same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1), 53 significant bits
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // [0, n); n > 0
    int uniform_int(int n) {
        int k = static_cast<int>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

private:
    std::mt19937_64 engine_;
};

// A point constrained to a triangle, with its barycentric weights
// (weights sum to 1, position = u*a + v*b + w*c).
struct TrianglePoint {
    Vec3 position{0, 0, 0};
    double u = 0, v = 0, w = 0;
};

// Exact-region closest point: classifies p against the triangle's Voronoi
// regions (vertices, edges, interior) and evaluates the projection in closed
// form. No iteration, no epsilons, so results are bit-stable.
TrianglePoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                        const Vec3& c);

double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c);

// Procedural closed test shapes, all CCW-wound and watertight.
IndexedMesh make_uv_sphere(int rings, int segments, double radius, const Vec3& center = {0, 0, 0});
IndexedMesh make_torus(int major_segments, int minor_segments, double major_radius,
                       double minor_radius, const Vec3& center = {0, 0, 0});
// Genus-2 surface: two tori bridged through a pair of removed quads.
IndexedMesh make_double_torus(int major_segments, int minor_segments);

} // namespace gamesh
