#include "gamesh/triangulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace gamesh {

int auto_grid_res(int k) {
    const int r = static_cast<int>(std::ceil(8.0 * std::sqrt(std::max(0, k)))) * 4;
    return std::max(64, r);
}

namespace {

using Triple = std::array<int, 3>;

double dist2(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

double min_pairwise_distance(const std::vector<Vec2>& pts) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            best = std::min(best, dist2(pts[i], pts[j]));
    return std::sqrt(best);
}

// Depth below the domain boundary of the farthest Voronoi vertex the grid
// must see. For each hull edge the Delaunay triangle standing on it has its
// circumcenter at depth max_s (t(L-t) - d^2) / (2d) over sites s at distance
// d from the edge line and offset t along it, so any smaller margin provably
// misses that triangle.
double required_margin(const std::vector<Vec2>& pts) {
    double need = 0.0;
    for (int e = 0; e < 3; ++e) {
        const Vec2 p = kEquilateral[e], q = kEquilateral[(e + 1) % 3];
        const double len = std::sqrt(dist2(p, q));
        const double ux = (q.x - p.x) / len, uy = (q.y - p.y) / len;
        for (size_t s = 3; s < pts.size(); ++s) {
            const double rx = pts[s].x - p.x, ry = pts[s].y - p.y;
            const double t = rx * ux + ry * uy;
            const double d = ux * ry - uy * rx;  // positive on the interior side
            if (d <= 0.0 || t <= 0.0 || t >= len) continue;
            need = std::max(need, (t * (len - t) - d * d) / (2.0 * d));
        }
    }
    return need;
}

std::optional<std::vector<Triple>> rasterize(const std::vector<Vec2>& pts, int res,
                                             double margin) {
    const double height = kEquilateral[2].y;
    const double x0 = -margin, y0 = -margin;
    const double width = 1.0 + 2.0 * margin;
    const double cell = width / res;
    const int nx = res;
    const int ny = static_cast<int>(std::ceil((height + 2.0 * margin) / cell));
    const int nsites = static_cast<int>(pts.size());

    std::vector<int> owner(static_cast<size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j) {
        const double py = y0 + (j + 0.5) * cell;
        for (int i = 0; i < nx; ++i) {
            const double px = x0 + (i + 0.5) * cell;
            int best = 0;
            double best_d2 = dist2({px, py}, pts[0]);
            for (int s = 1; s < nsites; ++s) {
                const double d2 = dist2({px, py}, pts[s]);
                if (d2 < best_d2) {
                    best_d2 = d2;
                    best = s;
                }
            }
            owner[static_cast<size_t>(j) * nx + i] = best;
        }
    }

    std::set<Triple> found;
    auto emit = [&](int a, int b, int c) {
        Triple t = {a, b, c};
        std::sort(t.begin(), t.end());
        found.insert(t);
    };

    for (int j = 0; j + 1 < ny; ++j) {
        for (int i = 0; i + 1 < nx; ++i) {
            const int s00 = owner[static_cast<size_t>(j) * nx + i];
            const int s10 = owner[static_cast<size_t>(j) * nx + i + 1];
            const int s01 = owner[static_cast<size_t>(j + 1) * nx + i];
            const int s11 = owner[static_cast<size_t>(j + 1) * nx + i + 1];
            int ids[4] = {s00, s10, s01, s11};
            std::sort(ids, ids + 4);
            const int distinct = static_cast<int>(std::unique(ids, ids + 4) - ids);
            if (distinct == 3) {
                emit(ids[0], ids[1], ids[2]);
            } else if (distinct == 4) {
                // four cells meet: split along the diagonal holding the lowest site
                if (ids[0] == s00 || ids[0] == s11) {
                    emit(s00, s11, s10);
                    emit(s00, s11, s01);
                } else {
                    emit(s10, s01, s00);
                    emit(s10, s01, s11);
                }
            }
        }
    }

    return std::vector<Triple>(found.begin(), found.end());
}

// Orients every triangle CCW in place and accepts only an exact covering
// triangulation: 2k+1 faces, every site used, positive areas summing to the
// domain, interior edges shared by two faces and the three hull edges by one.
bool validate_cover(std::vector<Triple>& tris, const std::vector<Vec2>& pts, int k) {
    if (static_cast<int>(tris.size()) != 2 * k + 1) return false;

    std::vector<char> used(pts.size(), 0);
    std::map<std::pair<int, int>, int> edge_deg;
    double area_sum = 0.0;
    for (Triple& t : tris) {
        double s = signed_area2(pts[t[0]], pts[t[1]], pts[t[2]]);
        if (s < 0) {
            std::swap(t[1], t[2]);
            s = -s;
        }
        if (s <= 0.0) return false;
        area_sum += 0.5 * s;
        for (int e = 0; e < 3; ++e) {
            used[t[e]] = 1;
            int a = t[e], b = t[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_deg[{a, b}];
        }
    }
    for (char u : used)
        if (!u) return false;

    const double total =
        0.5 * signed_area2(kEquilateral[0], kEquilateral[1], kEquilateral[2]);
    if (std::abs(area_sum - total) > 1e-9 * total) return false;

    std::set<std::pair<int, int>> boundary;
    for (const auto& [edge, deg] : edge_deg) {
        if (deg > 2) return false;
        if (deg == 1) boundary.insert(edge);
    }
    return boundary == std::set<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}};
}

// Exact Delaunay over corners + sites by gift wrapping: each frontier edge
// adopts, among the sites strictly to its left, the one whose circumcircle
// holds no other. No enclosing super-triangle is involved, so near-edge
// slivers with giant circumcircles cost nothing in predicate precision —
// every determinant stays on unit-scale coordinates.
std::vector<Triple> exact_delaunay(const std::vector<Vec2>& pts) {
    const int n = static_cast<int>(pts.size());

    auto orient = [&](int a, int b, int c) -> int {
        const long double v =
            static_cast<long double>(pts[b].x - pts[a].x) * (pts[c].y - pts[a].y) -
            static_cast<long double>(pts[b].y - pts[a].y) * (pts[c].x - pts[a].x);
        return v > 0.0L ? 1 : (v < 0.0L ? -1 : 0);
    };
    // sign is positive when d lies strictly inside the circumcircle of CCW (a,b,c)
    auto in_circle = [&](int a, int b, int c, int d) -> int {
        const long double ax = pts[a].x - pts[d].x, ay = pts[a].y - pts[d].y;
        const long double bx = pts[b].x - pts[d].x, by = pts[b].y - pts[d].y;
        const long double cx = pts[c].x - pts[d].x, cy = pts[c].y - pts[d].y;
        const long double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                                (bx * bx + by * by) * (ax * cy - cx * ay) +
                                (cx * cx + cy * cy) * (ax * by - bx * ay);
        return det > 0.0L ? 1 : (det < 0.0L ? -1 : 0);
    };

    // A directed edge is "done" once a triangle sits on its left. The reversed
    // hull edges face the outside and start done; the hull edges seed the walk.
    std::set<std::pair<int, int>> done = {{1, 0}, {2, 1}, {0, 2}};
    std::vector<std::pair<int, int>> frontier = {{0, 1}, {1, 2}, {2, 0}};
    std::vector<Triple> out;
    while (!frontier.empty()) {
        const auto [u, v] = frontier.back();
        frontier.pop_back();
        if (done.count({u, v})) continue;
        int w = -1;
        for (int x = 0; x < n; ++x) {
            if (x == u || x == v || orient(u, v, x) <= 0) continue;
            if (w < 0) {
                w = x;
                continue;
            }
            const int s = in_circle(u, v, w, x);
            if (s > 0 || (s == 0 && x < w)) w = x;  // cocircular ties go to the lowest id
        }
        if (w < 0) throw std::runtime_error("triangulate_face: frontier edge saw no site");
        done.insert({u, v});
        done.insert({v, w});
        done.insert({w, u});
        if (!done.count({w, v})) frontier.push_back({w, v});
        if (!done.count({u, w})) frontier.push_back({u, w});
        Triple t = {u, v, w};
        std::sort(t.begin(), t.end());
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct LadderResult {
    std::vector<Triple> tris;
    int grid_res = 0;
    int attempts = 0;
    bool ok = false;
};

LadderResult run_ladder(const std::vector<Vec2>& pts, int k, int base_res) {
    LadderResult result;
    const double separation = min_pairwise_distance(pts);
    const double need_margin = required_margin(pts);
    const double margins[4] = {0.25, 0.5, 1.0, 2.0};
    for (int rung = 0; rung < 4; ++rung) {
        const int res = base_res << rung;
        const double margin = margins[rung];
        const double cell = (1.0 + 2.0 * margin) / res;
        if (separation <= cell) continue;            // grid cannot separate the sites
        if (need_margin + 2.0 * cell > margin) continue;  // a Voronoi vertex lies out of reach
        ++result.attempts;
        auto tris = rasterize(pts, res, margin);
        if (tris && validate_cover(*tris, pts, k)) {
            result.tris = std::move(*tris);
            result.grid_res = res;
            result.ok = true;
            return result;
        }
    }
    return result;
}

// Re-insert sites that were folded into a coincident representative: each one
// splits the first triangle listing its representative into three, keeping
// the 2k+1 face count and using every original site.
void splice_duplicates(std::vector<Triple>& tris, const std::vector<int>& rep) {
    for (size_t i = 0; i < rep.size(); ++i) {
        if (rep[i] == static_cast<int>(i)) continue;
        const int dup = 3 + static_cast<int>(i);
        const int host = 3 + rep[i];
        for (size_t t = 0; t < tris.size(); ++t) {
            const Triple tri = tris[t];
            if (tri[0] != host && tri[1] != host && tri[2] != host) continue;
            tris[t] = {dup, tri[1], tri[2]};
            tris.push_back({tri[0], dup, tri[2]});
            tris.push_back({tri[0], tri[1], dup});
            break;
        }
    }
}

} // namespace

FaceTriangulation triangulate_face(const std::vector<Vec2>& sites, int grid_res) {
    const int k = static_cast<int>(sites.size());
    FaceTriangulation out;
    if (k == 0) {
        out.triangles = {{0, 1, 2}};
        return out;
    }
    if (k == 1) {
        out.triangles = {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}};
        return out;
    }
    if (grid_res <= 0) grid_res = auto_grid_res(k);

    std::vector<Vec2> pts = {kEquilateral[0], kEquilateral[1], kEquilateral[2]};
    pts.insert(pts.end(), sites.begin(), sites.end());

    LadderResult ladder = run_ladder(pts, k, grid_res);
    out.attempts = ladder.attempts;
    if (ladder.ok) {
        out.triangles = std::move(ladder.tris);
        out.grid_res = ladder.grid_res;
        return out;
    }

    // fold together sites within 1e-12 of a lower-index one
    std::vector<int> rep(k);
    for (int i = 0; i < k; ++i) {
        rep[i] = i;
        for (int j = 0; j < i; ++j) {
            if (rep[j] == j && dist2(sites[i], sites[j]) <= 1e-24) {
                rep[i] = j;
                break;
            }
        }
    }
    std::vector<Vec2> reduced = {kEquilateral[0], kEquilateral[1], kEquilateral[2]};
    std::vector<int> reduced_ids;  // original site index per reduced site
    for (int i = 0; i < k; ++i) {
        if (rep[i] != i) continue;
        reduced_ids.push_back(i);
        reduced.push_back(sites[i]);
    }
    const int rk = static_cast<int>(reduced_ids.size());
    out.merged_sites = k - rk;

    std::vector<Triple> tris;
    if (rk < k) {
        LadderResult retry = run_ladder(reduced, rk, grid_res);
        out.attempts += retry.attempts;
        if (retry.ok) {
            tris = std::move(retry.tris);
            out.grid_res = retry.grid_res;
        }
    }
    if (tris.empty()) {
        tris = exact_delaunay(reduced);
        if (!validate_cover(tris, reduced, rk))
            throw std::runtime_error("triangulate_face: could not triangulate the site set");
        out.exact_fallback = true;
    }

    if (rk < k) {
        // map reduced ids back to original ids, then re-insert the folded sites
        std::vector<int> to_original(rk + 3);
        for (int c = 0; c < 3; ++c) to_original[c] = c;
        for (int i = 0; i < rk; ++i) to_original[3 + i] = 3 + reduced_ids[i];
        for (Triple& t : tris)
            for (int e = 0; e < 3; ++e) t[e] = to_original[t[e]];
        splice_duplicates(tris, rep);
    }

    if (static_cast<int>(tris.size()) != 2 * k + 1)
        throw std::runtime_error("triangulate_face: triangle count invariant broken");
    out.triangles = std::move(tris);
    return out;
}

} // namespace gamesh
