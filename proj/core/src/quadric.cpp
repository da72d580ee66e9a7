#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "editable_mesh.hpp"
#include "gamesh/simplify.hpp"

namespace gamesh {

namespace {

using detail::EditableMesh;

// Symmetric quadric form: error(v) = v^T A v + 2 b.v + c.
struct Quadric {
    double a00 = 0, a01 = 0, a02 = 0, a11 = 0, a12 = 0, a22 = 0;
    double b0 = 0, b1 = 0, b2 = 0, c = 0;

    void add_plane(const Vec3& n, double d, double w) {
        a00 += w * n.x * n.x;
        a01 += w * n.x * n.y;
        a02 += w * n.x * n.z;
        a11 += w * n.y * n.y;
        a12 += w * n.y * n.z;
        a22 += w * n.z * n.z;
        b0 += w * d * n.x;
        b1 += w * d * n.y;
        b2 += w * d * n.z;
        c += w * d * d;
    }

    Quadric& operator+=(const Quadric& o) {
        a00 += o.a00; a01 += o.a01; a02 += o.a02;
        a11 += o.a11; a12 += o.a12; a22 += o.a22;
        b0 += o.b0; b1 += o.b1; b2 += o.b2; c += o.c;
        return *this;
    }

    double eval(const Vec3& v) const {
        const double qx = a00 * v.x + a01 * v.y + a02 * v.z;
        const double qy = a01 * v.x + a11 * v.y + a12 * v.z;
        const double qz = a02 * v.x + a12 * v.y + a22 * v.z;
        return v.x * qx + v.y * qy + v.z * qz + 2.0 * (b0 * v.x + b1 * v.y + b2 * v.z) + c;
    }

    // Solve A v = -b; false when A is too close to singular to trust.
    bool minimize(Vec3& out) const {
        const double det = a00 * (a11 * a22 - a12 * a12) - a01 * (a01 * a22 - a12 * a02) +
                           a02 * (a01 * a12 - a11 * a02);
        double scale = 0.0;
        for (double m : {a00, a01, a02, a11, a12, a22}) scale = std::max(scale, std::abs(m));
        if (std::abs(det) <= 1e-10 * scale * scale * scale) return false;
        const double rx = -b0, ry = -b1, rz = -b2;
        out.x = (rx * (a11 * a22 - a12 * a12) - a01 * (ry * a22 - a12 * rz) +
                 a02 * (ry * a12 - a11 * rz)) /
                det;
        out.y = (a00 * (ry * a22 - a12 * rz) - rx * (a01 * a22 - a12 * a02) +
                 a02 * (a01 * rz - ry * a02)) /
                det;
        out.z = (a00 * (a11 * rz - ry * a12) - a01 * (a01 * rz - ry * a02) +
                 rx * (a01 * a12 - a11 * a02)) /
                det;
        return true;
    }
};

struct QCandidate {
    double cost;
    int a, b;  // a < b
    Vec3 placement;
    std::uint32_t va, vb;
    int retries;
};

struct QOrder {
    bool operator()(const QCandidate& x, const QCandidate& y) const {
        if (x.cost != y.cost) return x.cost > y.cost;
        if (x.a != y.a) return x.a > y.a;
        return x.b > y.b;
    }
};

using QHeap = std::priority_queue<QCandidate, std::vector<QCandidate>, QOrder>;

// optimal placement when the quadric allows it, else best of the endpoints/midpoint
Vec3 place(const Quadric& q, const Vec3& pa, const Vec3& pb, double* cost) {
    Vec3 v;
    if (q.minimize(v)) {
        *cost = std::max(q.eval(v), 0.0);
        return v;
    }
    const Vec3 mid = (pa + pb) / 2.0;
    Vec3 best = pa;
    double best_cost = q.eval(pa);
    if (q.eval(pb) < best_cost) {
        best = pb;
        best_cost = q.eval(pb);
    }
    if (q.eval(mid) < best_cost) {
        best = mid;
        best_cost = q.eval(mid);
    }
    *cost = std::max(best_cost, 0.0);
    return best;
}

// Collapsing is only safe when the common neighborhood of the endpoints is
// exactly the apexes of their shared faces; anything extra pinches the mesh.
bool link_ok(const EditableMesh& em, int a, int b) {
    const std::vector<int> na = em.neighbors(a);
    const std::vector<int> nb = em.neighbors(b);
    int common = 0;
    size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
        if (na[i] < nb[j]) {
            ++i;
        } else if (nb[j] < na[i]) {
            ++j;
        } else {
            ++common;
            ++i;
            ++j;
        }
    }
    int shared_faces = 0;
    for (int f : em.vfaces[a])
        if (em.face_contains(f, b)) ++shared_faces;
    return common == shared_faces;
}

void push_pair(const EditableMesh& em, const std::vector<Quadric>& q,
               const std::vector<std::uint32_t>& version, QHeap& heap, int a, int b) {
    if (a > b) std::swap(a, b);
    Quadric sum = q[a];
    sum += q[b];
    double cost = 0.0;
    const Vec3 v = place(sum, em.pos[a], em.pos[b], &cost);
    heap.push({cost, a, b, v, version[a], version[b], 0});
}

} // namespace

IndexedMesh simplify_quadric(const IndexedMesh& mesh, int target_vertices) {
    if (target_vertices < 4)
        throw std::invalid_argument("simplify_quadric: target must be at least 4 vertices");
    const int nv = mesh.vertex_count();
    if (nv <= target_vertices) return mesh;

    EditableMesh em = EditableMesh::from(mesh);
    const double area_tol = 1e-12 * norm2(mesh.bounds().extent());

    std::vector<Quadric> q(nv);
    for (const Face& f : mesh.faces) {
        const Vec3& p0 = mesh.vertices[f[0]];
        const FaceGeometry g = triangle_geometry(p0, mesh.vertices[f[1]], mesh.vertices[f[2]]);
        if (g.degenerate) continue;
        const double d = -dot(g.normal, p0);
        for (int k = 0; k < 3; ++k) q[f[k]].add_plane(g.normal, d, g.area);
    }

    // Boundary edges get a constraint plane through the edge, perpendicular to
    // the lone incident face, so open rims resist being eaten.
    const AdjacencyMap adj(mesh);
    for (const EdgeRecord& e : adj.edges()) {
        if (e.faces.size() != 1) continue;
        const Face& f = mesh.faces[e.faces[0]];
        const FaceGeometry g =
            triangle_geometry(mesh.vertices[f[0]], mesh.vertices[f[1]], mesh.vertices[f[2]]);
        if (g.degenerate) continue;
        const Vec3 pa = mesh.vertices[e.a];
        const Vec3 pb = mesh.vertices[e.b];
        Vec3 n = cross(pb - pa, g.normal);
        const double len = norm(n);
        if (len <= 0.0) continue;
        n = n / len;
        const double w = 1e3 * norm2(pb - pa);
        q[e.a].add_plane(n, -dot(n, pa), w);
        q[e.b].add_plane(n, -dot(n, pa), w);
    }

    std::vector<std::uint32_t> version(nv, 0);
    QHeap heap;
    for (int v = 0; v < nv; ++v)
        for (int n : em.neighbors(v))
            if (v < n) push_pair(em, q, version, heap, v, n);

    int alive = 0;
    for (std::uint8_t a : em.v_alive) alive += a;

    constexpr int kMaxRetries = 10;
    while (alive > target_vertices && !heap.empty()) {
        const QCandidate c = heap.top();
        heap.pop();
        if (!em.v_alive[c.a] || !em.v_alive[c.b]) continue;
        if (version[c.a] != c.va || version[c.b] != c.vb) continue;
        if (!em.edge_exists(c.a, c.b)) continue;

        if (!link_ok(em, c.a, c.b) || em.would_flip(c.a, c.b, c.placement, area_tol)) {
            // blocked here and now; neighborhoods move, so retry at a higher cost
            if (c.retries < kMaxRetries)
                heap.push({c.cost * 2.0, c.a, c.b, c.placement, c.va, c.vb, c.retries + 1});
            continue;
        }

        em.collapse(c.a, c.b, c.placement);
        q[c.a] += q[c.b];
        ++version[c.a];
        ++version[c.b];
        --alive;
        for (int n : em.neighbors(c.a)) push_pair(em, q, version, heap, c.a, n);
    }

    // compact, keeping input vertex order; vertices left without faces go too
    IndexedMesh out;
    std::vector<int> remap(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (!em.v_alive[v] || em.vfaces[v].empty()) continue;
        remap[v] = static_cast<int>(out.vertices.size());
        out.vertices.push_back(em.pos[v]);
    }
    for (size_t f = 0; f < em.faces.size(); ++f) {
        if (!em.f_alive[f]) continue;
        const Face& t = em.faces[f];
        out.faces.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
    }
    return out;
}

} // namespace gamesh
