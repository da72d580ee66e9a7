#include "gamesh/primitives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gamesh {

namespace {

// fallback for zero-area triangles: best point across the three edges
TrianglePoint closest_point_degenerate(const Vec3& p, const Vec3& a, const Vec3& b,
                                       const Vec3& c) {
    struct Seg {
        const Vec3 &s, &e;
        int si, ei;
    };
    const Seg segs[3] = {{a, b, 0, 1}, {a, c, 0, 2}, {b, c, 1, 2}};
    TrianglePoint best;
    double best_d2 = -1.0;
    for (const Seg& seg : segs) {
        const Vec3 d = seg.e - seg.s;
        const double len2 = norm2(d);
        double t = len2 > 0.0 ? dot(p - seg.s, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const Vec3 q = seg.s + t * d;
        const double d2 = distance2(p, q);
        if (best_d2 < 0.0 || d2 < best_d2) {
            best_d2 = d2;
            double bary[3] = {0, 0, 0};
            bary[seg.si] = 1.0 - t;
            bary[seg.ei] = t;
            best = {q, bary[0], bary[1], bary[2]};
        }
    }
    return best;
}

} // namespace

TrianglePoint closest_point_on_triangle(const Vec3& p, const Vec3& a, const Vec3& b,
                                        const Vec3& c) {
    const Vec3 ab = b - a, ac = c - a, ap = p - a;
    if (norm2(cross(ab, ac)) == 0.0) return closest_point_degenerate(p, a, b, c);
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0) return {a, 1, 0, 0};

    const Vec3 bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3) return {b, 0, 1, 0};

    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
        const double t = d1 / (d1 - d3);
        return {a + t * ab, 1.0 - t, t, 0};
    }

    const Vec3 cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6) return {c, 0, 0, 1};

    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
        const double t = d2 / (d2 - d6);
        return {a + t * ac, 1.0 - t, 0, t};
    }

    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && d4 - d3 >= 0.0 && d5 - d6 >= 0.0) {
        const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return {b + t * (c - b), 0, 1.0 - t, t};
    }

    const double denom = 1.0 / (va + vb + vc);
    const double v = vb * denom, w = vc * denom;
    return {a + v * ab + w * ac, 1.0 - v - w, v, w};
}

double point_triangle_distance2(const Vec3& p, const Vec3& a, const Vec3& b, const Vec3& c) {
    return distance2(p, closest_point_on_triangle(p, a, b, c).position);
}

IndexedMesh make_uv_sphere(int rings, int segments, double radius, const Vec3& center) {
    if (rings < 2 || segments < 3)
        throw std::invalid_argument("make_uv_sphere: need rings >= 2, segments >= 3");

    IndexedMesh m;
    const double pi = std::numbers::pi;
    m.vertices.push_back(center + Vec3{0, 0, radius});
    for (int i = 1; i < rings; ++i) {
        const double theta = pi * i / rings;
        for (int j = 0; j < segments; ++j) {
            const double phi = 2.0 * pi * j / segments;
            m.vertices.push_back(center + radius * Vec3{std::sin(theta) * std::cos(phi),
                                                        std::sin(theta) * std::sin(phi),
                                                        std::cos(theta)});
        }
    }
    const int south = static_cast<int>(m.vertices.size());
    m.vertices.push_back(center + Vec3{0, 0, -radius});

    auto ring = [&](int i, int j) { return 1 + (i - 1) * segments + (j % segments); };

    for (int j = 0; j < segments; ++j)
        m.faces.push_back({0, ring(1, j), ring(1, j + 1)});
    for (int i = 1; i + 1 < rings; ++i) {
        for (int j = 0; j < segments; ++j) {
            const int a = ring(i, j), b = ring(i + 1, j);
            const int c = ring(i + 1, j + 1), d = ring(i, j + 1);
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    }
    for (int j = 0; j < segments; ++j)
        m.faces.push_back({south, ring(rings - 1, j + 1), ring(rings - 1, j)});
    return m;
}

IndexedMesh make_torus(int major_segments, int minor_segments, double major_radius,
                       double minor_radius, const Vec3& center) {
    if (major_segments < 3 || minor_segments < 3)
        throw std::invalid_argument("make_torus: need at least 3 segments each way");

    IndexedMesh m;
    const double pi = std::numbers::pi;
    for (int i = 0; i < major_segments; ++i) {
        const double theta = 2.0 * pi * i / major_segments;
        for (int j = 0; j < minor_segments; ++j) {
            const double psi = 2.0 * pi * j / minor_segments;
            const double rad = major_radius + minor_radius * std::cos(psi);
            m.vertices.push_back(center + Vec3{rad * std::cos(theta), rad * std::sin(theta),
                                               minor_radius * std::sin(psi)});
        }
    }

    auto at = [&](int i, int j) {
        return (i % major_segments) * minor_segments + (j % minor_segments);
    };
    for (int i = 0; i < major_segments; ++i) {
        for (int j = 0; j < minor_segments; ++j) {
            const int a = at(i, j), b = at(i + 1, j), c = at(i + 1, j + 1), d = at(i, j + 1);
            m.faces.push_back({a, b, c});
            m.faces.push_back({a, c, d});
        }
    }
    return m;
}

IndexedMesh make_double_torus(int major_segments, int minor_segments) {
    // Two mirror-image tori with one quad (two faces) removed from each,
    // bridged across the gap by four quads between the mirror-paired
    // boundary loops. Consistent winding throughout keeps the result a
    // closed oriented genus-2 surface.
    const double major_radius = 0.22, minor_radius = 0.08, gap = 0.10;
    const double cx = major_radius + minor_radius + 0.5 * gap;

    IndexedMesh left =
        make_torus(major_segments, minor_segments, major_radius, minor_radius, {-cx, 0, 0});
    // faces 0 and 1 are the quad at (major 0, minor 0), the patch nearest x = 0
    left.faces.erase(left.faces.begin(), left.faces.begin() + 2);

    IndexedMesh out = left;
    const int offset = left.vertex_count();
    for (const Vec3& v : left.vertices) out.vertices.push_back({-v.x, v.y, v.z});
    for (const Face& f : left.faces)
        out.faces.push_back({offset + f[0], offset + f[2], offset + f[1]});

    // boundary loop of the removed quad, in the winding the removed faces had
    const int A = 0, B = minor_segments, C = minor_segments + 1, D = 1;
    const int A2 = offset + A, B2 = offset + B, C2 = offset + C, D2 = offset + D;
    const int bridge[4][4] = {
        {A, B, B2, A2}, {B, C, C2, B2}, {C, D, D2, C2}, {D, A, A2, D2}};
    for (const auto& q : bridge) {
        out.faces.push_back({q[0], q[1], q[2]});
        out.faces.push_back({q[0], q[2], q[3]});
    }
    return out;
}

} // namespace gamesh
