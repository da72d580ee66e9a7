#pragma once

#include <array>
#include <vector>

namespace gamesh {

struct Vec2 {
    double x = 0, y = 0;
};

inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

// Reference equilateral triangle the face domain is rescaled into.
inline constexpr Vec2 kEquilateral[3] = {{0.0, 0.0}, {1.0, 0.0}, {0.5, 0.8660254037844386}};

// Maps barycentric weights (u on corner 0, v on 1, w on 2) into the domain.
inline Vec2 equilateral_point(double u, double v, double w) {
    return {u * kEquilateral[0].x + v * kEquilateral[1].x + w * kEquilateral[2].x,
            u * kEquilateral[0].y + v * kEquilateral[1].y + w * kEquilateral[2].y};
}

inline double signed_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Triangulation of the equilateral domain over sites {corner 0,1,2} ∪
// {3+i ↔ sites[i]}. Triangles are CCW; for k interior sites there are
// exactly 2k+1 of them and every site is used.
struct FaceTriangulation {
    std::vector<std::array<int, 3>> triangles;
    int grid_res = 0;          // resolution that produced the result, 0 if none
    int attempts = 0;          // rasterization attempts made
    bool exact_fallback = false;  // grid method replaced by incremental Delaunay
    int merged_sites = 0;      // coincident sites folded together and re-spliced
};

// Discrete-Voronoi Delaunay triangulation: nearest-site labels on a pixel
// grid, a triangle per 2x2 window meeting >= 3 labels. Sites must be strictly
// interior. Tie-breaks use site order, so callers wanting order-independent
// output must pass sites in a canonical order. When the grid cannot separate
// sites or a Voronoi vertex falls beyond the largest tried margin, escalates
// through doubled resolutions, merges near-coincident sites (1e-12), and
// finally switches to an exact incremental triangulation.
FaceTriangulation triangulate_face(const std::vector<Vec2>& sites, int grid_res);

// Default per-face resolution for k interior sites.
int auto_grid_res(int k);

} // namespace gamesh
