#pragma once

// Brute-force reference implementations that the fast paths are checked
// against, plus small helpers shared across suites.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <vector>

#include "gamesh/bvh.hpp"
#include "gamesh/mesh.hpp"
#include "gamesh/primitives.hpp"
#include "gamesh/triangulate.hpp"
#include "gamesh/vec3.hpp"

namespace oracle {

using gamesh::Face;
using gamesh::IndexedMesh;
using gamesh::Vec3;

// ---- closest point, independent of the library's region-based routine ----
// Candidates: the unclamped interior critical point (2x2 normal equations),
// each edge's clamped 1D projection, and the three vertices.
struct TrianglePointRef {
    Vec3 position;
    double d2;
};

inline TrianglePointRef closest_on_triangle_ref(const Vec3& p, const Vec3& a, const Vec3& b,
                                                const Vec3& c) {
    std::vector<Vec3> candidates = {a, b, c};

    auto edge_point = [&](const Vec3& u, const Vec3& v) {
        const Vec3 d = v - u;
        const double len2 = gamesh::norm2(d);
        if (len2 > 0.0) {
            double t = gamesh::dot(p - u, d) / len2;
            t = std::min(1.0, std::max(0.0, t));
            candidates.push_back(u + t * d);
        }
    };
    edge_point(a, b);
    edge_point(b, c);
    edge_point(c, a);

    const Vec3 e0 = b - a, e1 = c - a, r = p - a;
    const double a00 = gamesh::dot(e0, e0), a01 = gamesh::dot(e0, e1), a11 = gamesh::dot(e1, e1);
    const double det = a00 * a11 - a01 * a01;
    if (det > 0.0) {
        const double s = (gamesh::dot(r, e0) * a11 - gamesh::dot(r, e1) * a01) / det;
        const double t = (gamesh::dot(r, e1) * a00 - gamesh::dot(r, e0) * a01) / det;
        if (s >= 0.0 && t >= 0.0 && s + t <= 1.0) candidates.push_back(a + s * e0 + t * e1);
    }

    TrianglePointRef best{candidates[0], gamesh::distance2(p, candidates[0])};
    for (const Vec3& q : candidates) {
        const double d2 = gamesh::distance2(p, q);
        if (d2 < best.d2) best = {q, d2};
    }
    return best;
}

// ---- all-faces projection using the library's per-triangle routine ----
// (ties to the lowest face index, the contract the BVH must reproduce exactly)
inline gamesh::ProjectedPoint brute_project(const IndexedMesh& mesh, const Vec3& p) {
    gamesh::ProjectedPoint best;
    best.original = p;
    best.distance2 = -1.0;
    for (int f = 0; f < mesh.face_count(); ++f) {
        const Face& t = mesh.faces[f];
        const gamesh::TrianglePoint tp = gamesh::closest_point_on_triangle(
            p, mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
        const double d2 = gamesh::distance2(p, tp.position);
        if (best.distance2 < 0.0 || d2 < best.distance2) {
            best.face = f;
            best.footprint = tp.position;
            best.u = tp.u;
            best.v = tp.v;
            best.w = tp.w;
            best.distance2 = d2;
        }
    }
    best.classification = gamesh::classify_barycentric(best.u, best.v, best.w);
    return best;
}

// ---- nearest neighbour by linear scan, (distance, index) tie order ----
inline int brute_nearest(const std::vector<Vec3>& cloud, const Vec3& q, double* d2_out) {
    int best = -1;
    double best_d2 = 0.0;
    for (size_t i = 0; i < cloud.size(); ++i) {
        const double d2 = gamesh::distance2(cloud[i], q);
        if (best < 0 || d2 < best_d2) {
            best = static_cast<int>(i);
            best_d2 = d2;
        }
    }
    if (d2_out) *d2_out = best_d2;
    return best;
}

// ---- empty-circumcircle check in the planar domain (long double) ----
// Returns false for triangles whose circumcircle, shrunk by `slack`, still
// strictly contains some other point.
inline bool empty_circumcircle(const std::vector<gamesh::Vec2>& pts, const std::array<int, 3>& t,
                               double slack) {
    const long double ax = pts[t[0]].x, ay = pts[t[0]].y;
    const long double bx = pts[t[1]].x, by = pts[t[1]].y;
    const long double cx = pts[t[2]].x, cy = pts[t[2]].y;
    const long double d = 2.0L * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (d == 0.0L) return false;
    const long double a2 = ax * ax + ay * ay;
    const long double b2 = bx * bx + by * by;
    const long double c2 = cx * cx + cy * cy;
    const long double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const long double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    const long double r = std::sqrt((ux - ax) * (ux - ax) + (uy - ay) * (uy - ay));
    const long double limit = r - static_cast<long double>(slack);
    for (size_t i = 0; i < pts.size(); ++i) {
        if (static_cast<int>(i) == t[0] || static_cast<int>(i) == t[1] ||
            static_cast<int>(i) == t[2])
            continue;
        const long double dx = pts[i].x - ux, dy = pts[i].y - uy;
        if (std::sqrt(dx * dx + dy * dy) < limit) return false;
    }
    return true;
}

// ---- structural check of a covering triangulation, written from scratch ----
inline bool valid_cover_ref(const std::vector<std::array<int, 3>>& tris,
                            const std::vector<gamesh::Vec2>& pts, int k) {
    if (static_cast<int>(tris.size()) != 2 * k + 1) return false;
    std::vector<int> used(pts.size(), 0);
    std::set<std::pair<int, int>> seen_edges;
    std::vector<int> edge_deg;
    std::vector<std::pair<int, int>> edge_ids;
    double area = 0.0;
    for (const auto& t : tris) {
        const double s2 = gamesh::signed_area2(pts[t[0]], pts[t[1]], pts[t[2]]);
        if (s2 <= 0.0) return false;  // emitted orientation must be CCW
        area += 0.5 * s2;
        for (int e = 0; e < 3; ++e) {
            used[t[e]] = 1;
            const int u = std::min(t[e], t[(e + 1) % 3]);
            const int v = std::max(t[e], t[(e + 1) % 3]);
            auto [it, fresh] = seen_edges.insert({u, v});
            if (fresh) {
                edge_ids.push_back({u, v});
                edge_deg.push_back(1);
            } else {
                for (size_t i = 0; i < edge_ids.size(); ++i)
                    if (edge_ids[i] == std::make_pair(u, v)) ++edge_deg[i];
            }
        }
    }
    for (size_t i = 0; i < pts.size(); ++i)
        if (!used[i]) return false;
    int hull = 0;
    for (size_t i = 0; i < edge_ids.size(); ++i) {
        if (edge_deg[i] > 2) return false;
        if (edge_deg[i] == 1) {
            const auto& [u, v] = edge_ids[i];
            if (u >= 3 || v >= 3) return false;  // only corner-corner edges may be bare
            ++hull;
        }
    }
    if (hull != 3) return false;
    const double total = 0.5 * gamesh::signed_area2(gamesh::kEquilateral[0],
                                                    gamesh::kEquilateral[1],
                                                    gamesh::kEquilateral[2]);
    return std::abs(area - total) <= 1e-9 * total;
}

// ---- misc helpers ----
inline std::set<std::array<int, 3>> face_set(const IndexedMesh& m) {
    std::set<std::array<int, 3>> s;
    for (const Face& f : m.faces) {
        std::array<int, 3> k = {f[0], f[1], f[2]};
        std::sort(k.begin(), k.end());
        s.insert(k);
    }
    return s;
}

inline bool same_vertices(const IndexedMesh& a, const IndexedMesh& b) {
    if (a.vertices.size() != b.vertices.size()) return false;
    for (size_t i = 0; i < a.vertices.size(); ++i) {
        if (a.vertices[i].x != b.vertices[i].x || a.vertices[i].y != b.vertices[i].y ||
            a.vertices[i].z != b.vertices[i].z)
            return false;
    }
    return true;
}

// ---- quadratic-time cloud metrics ----
inline double brute_min_d2(const std::vector<Vec3>& cloud, const Vec3& q) {
    double best = std::numeric_limits<double>::infinity();
    for (const Vec3& c : cloud) best = std::min(best, gamesh::distance2(c, q));
    return best;
}

inline double brute_chamfer(const std::vector<Vec3>& p, const std::vector<Vec3>& q) {
    double pq = 0.0, qp = 0.0;
    for (const Vec3& a : p) pq += brute_min_d2(q, a);
    for (const Vec3& b : q) qp += brute_min_d2(p, b);
    return pq / static_cast<double>(p.size()) + qp / static_cast<double>(q.size());
}

inline double brute_f1(const std::vector<Vec3>& p, const std::vector<Vec3>& q, double tau) {
    int hit_q = 0, hit_p = 0;
    for (const Vec3& b : q) hit_q += brute_min_d2(p, b) <= tau;
    for (const Vec3& a : p) hit_p += brute_min_d2(q, a) <= tau;
    const double precision = 100.0 * hit_q / static_cast<double>(q.size());
    const double recall = 100.0 * hit_p / static_cast<double>(p.size());
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

// Vertices that no face mentions.
inline int unreferenced_count(const IndexedMesh& m) {
    std::vector<char> seen(m.vertices.size(), 0);
    for (const Face& f : m.faces)
        for (int e = 0; e < 3; ++e)
            if (f[e] >= 0 && f[e] < static_cast<int>(seen.size())) seen[f[e]] = 1;
    int n = 0;
    for (char s : seen) n += s == 0;
    return n;
}

// Fisher-Yates using the library Rng, for reproducible subsets/permutations.
inline std::vector<int> shuffled_indices(int n, std::uint64_t seed) {
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = i;
    gamesh::Rng rng(seed);
    for (int i = 0; i < n - 1; ++i) {
        const int j = i + rng.uniform_int(n - i);
        std::swap(ids[i], ids[j]);
    }
    return ids;
}

} // namespace oracle
