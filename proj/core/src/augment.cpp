#include "gamesh/augment.hpp"

#include <algorithm>
#include <stdexcept>

#include "gamesh/parallel.hpp"
#include "gamesh/triangulate.hpp"

namespace gamesh {

namespace {

// clamp every component to >= epsilon, taking the excess from the largest
void clamp_interior(double& u, double& v, double& w, double epsilon) {
    u = std::max(u, epsilon);
    v = std::max(v, epsilon);
    w = std::max(w, epsilon);
    const double excess = u + v + w - 1.0;
    if (u >= v && u >= w) u -= excess;
    else if (v >= w) v -= excess;
    else w -= excess;
}

// barycentrics of a point already lying on face f
TrianglePoint rebase(const IndexedMesh& mesh, int f, const Vec3& p) {
    const Face& tri = mesh.faces[f];
    return closest_point_on_triangle(p, mesh.vertices[tri[0]], mesh.vertices[tri[1]],
                                     mesh.vertices[tri[2]]);
}

// Rank of each point under lexicographic order of its original coordinates.
// Every contest that would otherwise fall back to the input index (vertex
// claims, coincident sites, append order) uses this instead, so reordering
// the input reorders nothing downstream.
std::vector<int> coordinate_ranks(const std::vector<ProjectedPoint>& pts) {
    std::vector<int> order(pts.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Vec3& pa = pts[a].original;
        const Vec3& pb = pts[b].original;
        if (pa.x != pb.x) return pa.x < pb.x;
        if (pa.y != pb.y) return pa.y < pb.y;
        if (pa.z != pb.z) return pa.z < pb.z;
        return a < b; // exact duplicates keep input order
    });
    std::vector<int> rank(pts.size());
    for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = static_cast<int>(r);
    return rank;
}

} // namespace

PerturbResult perturb_boundary_points(const IndexedMesh& prior, const AdjacencyMap& adj,
                                      const std::vector<ProjectedPoint>& projected,
                                      double epsilon, double snap_tol) {
    PerturbResult out;
    out.points = projected;
    out.substituted_vertex.assign(projected.size(), -1);

    // which vertex each point would substitute, independent of the others
    std::vector<int> want(projected.size(), -1);
    for (size_t i = 0; i < projected.size(); ++i) {
        const ProjectedPoint& p = out.points[i];
        if (p.face < 0 || p.face >= prior.face_count())
            throw std::invalid_argument("perturb_boundary_points: point references no valid face");
        const Face& tri = prior.faces[p.face];
        int snap = -1;
        double snap_d2 = snap_tol * snap_tol;
        for (int k = 0; k < 3; ++k) {
            const double d2 = distance2(p.footprint, prior.vertices[tri[k]]);
            if (d2 < snap_d2) {
                snap_d2 = d2;
                snap = tri[k];
            } else if (d2 == snap_d2 && snap >= 0 && tri[k] < snap) {
                snap = tri[k];
            }
        }
        want[i] = snap;
    }

    // contested vertices go to the coordinate-rank winner, not the first in line
    const std::vector<int> rank = coordinate_ranks(projected);
    std::vector<int> by_rank(projected.size());
    for (size_t i = 0; i < projected.size(); ++i) by_rank[rank[i]] = static_cast<int>(i);
    std::vector<int> vertex_claimed_by(prior.vertex_count(), -1);
    for (const int i : by_rank) {
        if (want[i] < 0 || vertex_claimed_by[want[i]] >= 0) continue;
        vertex_claimed_by[want[i]] = i;
        out.substituted_vertex[i] = want[i];
    }

    for (size_t i = 0; i < projected.size(); ++i) {
        ProjectedPoint& p = out.points[i];
        if (out.substituted_vertex[i] >= 0) continue;
        if (p.classification == FootprintClass::interior) continue;
        const Face& tri = prior.faces[p.face];

        // pick the lowest-index face the footprint touches
        int home = p.face;
        if (p.classification == FootprintClass::on_vertex) {
            int corner = 0;
            if (p.v >= p.u && p.v >= p.w) corner = 1;
            else if (p.w >= p.u && p.w >= p.v) corner = 2;
            for (int f : adj.vertex_faces(tri[corner])) home = std::min(home, f);
        } else {
            // the near-zero component names the opposite corner; the edge is
            // the other two
            int opposite = 0;
            if (p.v <= p.u && p.v <= p.w) opposite = 1;
            else if (p.w <= p.u && p.w <= p.v) opposite = 2;
            const int a = tri[(opposite + 1) % 3], b = tri[(opposite + 2) % 3];
            if (const EdgeRecord* e = adj.find_edge(a, b))
                for (int f : e->faces) home = std::min(home, f);
        }

        TrianglePoint local = rebase(prior, home, p.footprint);
        double u = local.u, v = local.v, w = local.w;
        clamp_interior(u, v, w, epsilon);

        const Face& home_tri = prior.faces[home];
        p.face = home;
        p.u = u;
        p.v = v;
        p.w = w;
        p.footprint = u * prior.vertices[home_tri[0]] + v * prior.vertices[home_tri[1]] +
                      w * prior.vertices[home_tri[2]];
        p.distance2 = distance2(p.original, p.footprint);
        p.classification = FootprintClass::interior;
    }
    return out;
}

AugmentedMesh augment(const IndexedMesh& prior, const PerturbResult& perturbed, int grid_res) {
    const int nv = prior.vertex_count();
    const int np = static_cast<int>(perturbed.points.size());

    AugmentedMesh out;
    out.mesh.vertices = prior.vertices;
    out.labels.assign(nv, 1);
    out.source_point.assign(nv, -1);
    out.projections = perturbed.points;

    for (int i = 0; i < np; ++i) {
        const int v = perturbed.substituted_vertex[i];
        if (v < 0) continue;
        if (out.source_point[v] >= 0)
            throw std::invalid_argument("augment: two points substitute the same vertex");
        out.labels[v] = 0;
        out.source_point[v] = i;
        out.mesh.vertices[v] = perturbed.points[i].footprint;
        ++out.substitutions;
    }

    // appended point vertices, in coordinate-rank order: the numbering (and so
    // every downstream index-based tie-break) survives input reordering
    const std::vector<int> rank = coordinate_ranks(perturbed.points);
    std::vector<int> by_rank(np);
    for (int i = 0; i < np; ++i) by_rank[rank[i]] = i;
    std::vector<int> vertex_of_point(np, -1);
    for (const int i : by_rank) {
        if (perturbed.substituted_vertex[i] >= 0) {
            vertex_of_point[i] = perturbed.substituted_vertex[i];
            continue;
        }
        vertex_of_point[i] = static_cast<int>(out.mesh.vertices.size());
        out.mesh.vertices.push_back(perturbed.points[i].footprint);
        out.labels.push_back(0);
        out.source_point.push_back(i);
    }

    // group interior points per face, canonically ordered by domain position
    std::vector<std::vector<int>> face_points(prior.face_count());
    for (int i = 0; i < np; ++i) {
        if (perturbed.substituted_vertex[i] >= 0) continue;
        const ProjectedPoint& p = perturbed.points[i];
        face_points[p.face].push_back(i);
    }
    auto domain_pos = [&](int i) {
        const ProjectedPoint& p = perturbed.points[i];
        return equilateral_point(p.u, p.v, p.w);
    };
    for (auto& pts : face_points) {
        std::sort(pts.begin(), pts.end(), [&](int a, int b) {
            const Vec2 pa = domain_pos(a), pb = domain_pos(b);
            if (pa.x != pb.x) return pa.x < pb.x;
            if (pa.y != pb.y) return pa.y < pb.y;
            return rank[a] < rank[b]; // coincident sites: coordinate rank decides
        });
    }

    std::vector<int> busy;  // faces that need the grid triangulation (k >= 2)
    for (int f = 0; f < prior.face_count(); ++f)
        if (face_points[f].size() >= 2) busy.push_back(f);

    std::vector<FaceTriangulation> tri_results(busy.size());
    parallel_for(static_cast<std::int64_t>(busy.size()), [&](std::int64_t idx) {
        const auto& pts = face_points[busy[idx]];
        std::vector<Vec2> sites;
        sites.reserve(pts.size());
        for (int i : pts) sites.push_back(domain_pos(i));
        tri_results[idx] = triangulate_face(sites, grid_res);
    });

    std::vector<int> busy_slot(prior.face_count(), -1);
    for (size_t idx = 0; idx < busy.size(); ++idx) busy_slot[busy[idx]] = static_cast<int>(idx);

    for (int f = 0; f < prior.face_count(); ++f) {
        const Face& tri = prior.faces[f];
        const auto& pts = face_points[f];
        if (pts.empty()) {
            out.mesh.faces.push_back(tri);
            continue;
        }
        auto global_id = [&](int site) {
            return site < 3 ? tri[site] : vertex_of_point[pts[site - 3]];
        };
        if (pts.size() == 1) {
            const int s = global_id(3);
            out.mesh.faces.push_back({tri[0], tri[1], s});
            out.mesh.faces.push_back({tri[1], tri[2], s});
            out.mesh.faces.push_back({tri[2], tri[0], s});
            continue;
        }
        const FaceTriangulation& ft = tri_results[busy_slot[f]];
        for (const auto& t : ft.triangles)
            out.mesh.faces.push_back({global_id(t[0]), global_id(t[1]), global_id(t[2])});
        out.exact_fallbacks += ft.exact_fallback ? 1 : 0;
        out.merged_sites += ft.merged_sites;
        out.max_grid_res = std::max(out.max_grid_res, ft.grid_res);
    }
    return out;
}

} // namespace gamesh
